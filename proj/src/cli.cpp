#include "nbr/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nbr/catalog.hpp"
#include "nbr/errors.hpp"
#include "nbr/game_io.hpp"
#include "nbr/reductions.hpp"
#include "nbr/verification.hpp"

namespace nbr {

namespace {

enum class Format { Text, Records };

struct RunConfig {
  std::string game_source;
  BeliefKind beliefs = BeliefKind::Pure;
  ReductionKind relation = ReductionKind::TildeInitial;
  Policy policy = Policy::Fast;
  std::uint64_t seed = 0;
  int orders = 20;
  int resolution = 8;
  Format format = Format::Text;
  std::string script;
  std::string from;
  std::string to;
  std::string campaign;
  std::size_t random = 0;
  std::size_t players = 2;
  std::size_t max_size = 3;
  std::string catalog_action;
  std::string catalog_name;
};

const std::map<std::string, BeliefKind> kBeliefs{
    {"pure", BeliefKind::Pure},
    {"mixed", BeliefKind::IndependentMixed},
    {"correlated", BeliefKind::Correlated}};
const std::map<std::string, ReductionKind> kRelations{
    {"tilde", ReductionKind::TildeInitial},
    {"arrow", ReductionKind::ArrowCurrent},
    {"darrow", ReductionKind::DArrowTarget}};
const std::map<std::string, Policy> kPolicies{
    {"fast", Policy::Fast},
    {"random-partial", Policy::RandomPartial},
    {"single-random", Policy::SingleRandom},
    {"script", Policy::UserScript}};
const std::map<std::string, Format> kFormats{{"text", Format::Text},
                                             {"records", Format::Records}};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedGame {
  std::string name;
  GamePtr game;
};

LoadedGame load_game(const std::string& source) {
  if (source.empty()) throw InputError("--game is required");
  if (source.rfind("catalog:", 0) == 0) {
    CatalogEntry e = catalog_entry(source.substr(8));
    return {e.name, e.game};
  }
  return {source, std::make_shared<const FiniteGame>(
                      parse_game(read_file(source)))};
}

// A literal, or @path for a literal stored in a file.
Restriction load_restriction(const GamePtr& game, const std::string& spec) {
  if (!spec.empty() && spec.front() == '@') {
    std::string text = read_file(spec.substr(1));
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
      text.pop_back();
    }
    return parse_restriction(game, text);
  }
  return parse_restriction(game, spec);
}

std::vector<StrategySets> load_script(const GamePtr& game,
                                      const std::string& path) {
  std::vector<StrategySets> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.pop_back();
    }
    if (line.empty()) continue;
    out.push_back(parse_restriction(game, line).kept_sets());
  }
  return out;
}

nlohmann::ordered_json trace_record(const Trace& t) {
  const FiniteGame& game = *t.game;
  nlohmann::ordered_json j;
  j["relation"] = to_string(t.kind);
  j["beliefs"] = to_string(t.beliefs);
  j["policy"] = to_string(t.policy);
  j["seed"] = t.seed;
  j["game_hash"] = game_hash(game);
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const Step& s = t.steps[k];
    nlohmann::ordered_json step;
    step["step"] = k + 1;
    step["removed"] = render_sets(game, s.removed);
    step["kept"] = render_sets(game, s.to.kept_sets());
    nlohmann::ordered_json certs = nlohmann::ordered_json::object();
    for (const auto& [key, c] : s.certificates) {
      certs["p" + std::to_string(key.first + 1) + ":" +
            game.label(key.first, key.second)] =
          render_certificate(game, key.first, c);
    }
    step["certificates"] = std::move(certs);
    step["vacuous"] = s.vacuous;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["outcome"] = render_sets(game, t.outcome.kept_sets());
  j["possibly_non_maximal"] = t.possibly_non_maximal;
  return j;
}

OracleOptions oracle_options(const RunConfig& c) {
  OracleOptions o;
  o.grid_resolution = c.resolution;
  return o;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
  const LoadedGame g = load_game(c.game_source);
  IterateOptions io;
  io.policy = c.policy;
  io.seed = c.seed;
  io.oracle = oracle_options(c);
  if (c.policy == Policy::UserScript) {
    if (c.script.empty()) throw InputError("--policy script needs --script");
    io.script = load_script(g.game, c.script);
  }
  const Trace t = iterate(g.game, c.relation, c.beliefs, io);
  if (c.format == Format::Records) {
    out << trace_record(t).dump() << '\n';
  } else {
    out << render_trace(t);
  }
  return kExitOk;
}

int cmd_check_step(const RunConfig& c, std::ostream& out) {
  const LoadedGame g = load_game(c.game_source);
  const Restriction from = load_restriction(g.game, c.from);
  const Restriction to = load_restriction(g.game, c.to);
  OracleOptions options = oracle_options(c);
  options.dominance_proof = true;
  const StepVerdict v = validate_step(from, to, c.relation, c.beliefs, options);
  const FiniteGame& game = *g.game;
  out << "check relation=" << to_string(c.relation)
      << " beliefs=" << to_string(c.beliefs)
      << " from=" << render_sets(game, from.kept_sets())
      << " to=" << render_sets(game, to.kept_sets()) << '\n';
  if (const auto* r = std::get_if<Rejection>(&v)) {
    out << "illegal p" << (r->player + 1) << ':'
        << game.label(r->player, r->strategy) << ' '
        << render_certificate(game, r->player, r->certificate) << '\n';
    return kExitFailed;
  }
  const Step& step = std::get<Step>(v);
  out << "legal" << (step.vacuous ? " vacuous" : "") << '\n';
  for (const auto& [key, cert] : step.certificates) {
    out << "  p" << (key.first + 1) << ':' << game.label(key.first, key.second)
        << ' ' << render_certificate(game, key.first, cert) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  std::vector<Instance> instances;
  if (!c.game_source.empty()) {
    const LoadedGame g = load_game(c.game_source);
    instances.push_back({g.name, g.game});
  }
  if (c.random > 0) {
    for (auto& e : random_games(c.random, c.players, c.max_size, 1)) {
      instances.push_back({e.name, e.game});
    }
  }
  if (instances.empty()) throw InputError("verify needs --game or --random");

  VerifyOptions options;
  options.beliefs = c.beliefs;
  options.num_orders = c.orders;
  options.seed = c.seed;
  options.oracle = oracle_options(c);

  std::size_t pass = 0, failed = 0, unknown = 0;
  for (const auto& inst : instances) {
    std::vector<TheoremReport> reports;
    if (c.campaign == "order-independence") {
      reports = check_order_independence(inst, options);
    } else if (c.campaign == "fast-dominance") {
      reports = check_fast_dominance(inst, options);
    } else if (c.campaign == "equivalence") {
      reports = check_equivalence(inst, options);
    } else if (c.campaign == "nash") {
      reports = check_nash_preservation(inst, options);
    } else {
      reports = check_all(inst, options);
    }
    for (const auto& r : reports) {
      out << (c.format == Format::Records ? render_record(r) : render_text(r))
          << '\n';
      switch (r.verdict) {
        case Verdict::Pass:
          ++pass;
          break;
        case Verdict::Fail:
          ++failed;
          break;
        case Verdict::Unknown:
          ++unknown;
          break;
      }
    }
  }
  if (c.format == Format::Text) {
    out << "summary games=" << instances.size() << " pass=" << pass
        << " fail=" << failed << " unknown=" << unknown << '\n';
  }
  if (failed) return kExitFailed;
  return unknown ? kExitUnknown : kExitOk;
}

std::vector<std::string> wrap(const std::string& text, std::size_t width) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string word, line;
  while (in >> word) {
    if (!line.empty() && line.size() + 1 + word.size() > width) {
      lines.push_back(line);
      line.clear();
    }
    if (!line.empty()) line += ' ';
    line += word;
  }
  if (!line.empty()) lines.push_back(line);
  return lines;
}

int cmd_catalog(const RunConfig& c, std::ostream& out) {
  if (c.catalog_action == "list") {
    for (const auto& e : catalog_entries()) {
      std::string sizes;
      for (PlayerIndex i = 0; i < e.game->num_players(); ++i) {
        if (i) sizes += 'x';
        sizes += std::to_string(e.game->num_strategies(i));
      }
      out << e.name << " players=" << e.game->num_players()
          << " sizes=" << sizes << " hash=" << game_hash(*e.game) << " : "
          << e.provenance << '\n';
    }
    return kExitOk;
  }
  if (c.catalog_name.empty()) throw InputError("catalog emit needs a name");
  const CatalogEntry e = catalog_entry(c.catalog_name);
  std::vector<std::string> comments{e.name + ": " + e.provenance};
  for (auto& line : wrap(e.deviation_note, 74)) comments.push_back(line);
  out << render_game(*e.game, comments);
  return kExitOk;
}

template <class T>
void add_enum(CLI::App* app, const std::string& name, T& target,
              const std::map<std::string, T>& values,
              const std::string& help) {
  app->add_option(name, target, help)
      ->transform(CLI::CheckedTransformer(values, CLI::ignore_case))
      ->option_text("ENUM");
}

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--game", c.game_source, "game file or catalog:<name>");
  add_enum(app, "--beliefs", c.beliefs, kBeliefs,
           "pure | mixed | correlated");
  add_enum(app, "--relation", c.relation, kRelations,
           "tilde (~>) | arrow (->) | darrow (=>)");
  app->add_option("--resolution", c.resolution,
                  "largest grid denominator for independent-mixed search")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "PRNG seed");
  add_enum(app, "--format", c.format, kFormats, "text | records");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig c;
  CLI::App app{"Iterated elimination of never-best-response strategies"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "run a maximal elimination");
  add_common(solve, c);
  add_enum(solve, "--policy", c.policy, kPolicies,
           "fast | random-partial | single-random | script");
  solve->add_option("--script", c.script,
                    "file listing the strategies removed at each step, one literal per line");

  auto* check = app.add_subcommand("check-step", "validate one reduction step");
  add_common(check, c);
  check->add_option("--from,--kept", c.from, "restriction literal or @file")
      ->required();
  check->add_option("--to", c.to, "restriction literal or @file")->required();

  auto* verify = app.add_subcommand("verify", "run theorem checks");
  add_common(verify, c);
  verify
      ->add_option("campaign", c.campaign,
                   "order-independence | fast-dominance | equivalence | nash "
                   "| all")
      ->required()
      ->check(CLI::IsMember({"order-independence", "fast-dominance",
                             "equivalence", "nash", "all"}));
  verify->add_option("--orders", c.orders, "random orders per game")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--random", c.random, "number of seeded random games");
  verify->add_option("--players", c.players, "players in random games")
      ->check(CLI::Range(1, 8));
  verify->add_option("--max-size", c.max_size, "largest strategy set size")
      ->check(CLI::Range(1, 8));

  auto* catalog = app.add_subcommand("catalog", "list or emit catalog games");
  catalog->add_option("action", c.catalog_action, "list | emit")
      ->required()
      ->check(CLI::IsMember({"list", "emit"}));
  catalog->add_option("name", c.catalog_name, "catalog game name");

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1),
                                args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  std::ostringstream buffer;
  try {
    int code = kExitOk;
    if (*solve) {
      code = cmd_solve(c, buffer);
    } else if (*check) {
      code = cmd_check_step(c, buffer);
    } else if (*verify) {
      code = cmd_verify(c, buffer);
    } else {
      code = cmd_catalog(c, buffer);
    }
    out << buffer.str();
    return code;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace nbr
