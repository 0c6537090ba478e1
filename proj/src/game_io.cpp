#include "nbr/game_io.hpp"

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>

#include "nbr/errors.hpp"

namespace nbr {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> split_on(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      return out;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  for (char c : label) {
    if (c == ':' || c == ',' || c == ';' || c == '#' || c == '(' ||
        c == ')' || c == '[' || c == ']') {
      return false;
    }
  }
  return true;
}

std::size_t parse_count(const std::string& token, std::size_t line) {
  if (token.empty() || token.size() > 9) {
    throw ParseError(line, "expected a positive integer, got '" + token + "'");
  }
  std::size_t value = 0;
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError(line,
                       "expected a positive integer, got '" + token + "'");
    }
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

}  // namespace

FiniteGame parse_game(std::string_view text) {
  std::size_t players = 0;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::optional<std::vector<Rational>>> cells;
  std::vector<std::size_t> strides;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (players == 0) {
      if (tokens[0] != "players" || tokens.size() != 2) {
        throw ParseError(line_no, "expected 'players <n>'");
      }
      players = parse_count(tokens[1], line_no);
      if (players == 0) throw ParseError(line_no, "player count must be >= 1");
    } else if (labels.size() < players) {
      if (tokens[0] != "strategies" || tokens.size() < 2) {
        throw ParseError(line_no, "expected 'strategies " +
                                      std::to_string(labels.size() + 1) +
                                      ": <labels>'");
      }
      std::size_t first_label = 2;
      std::string index_token = tokens[1];
      if (!index_token.empty() && index_token.back() == ':') {
        index_token.pop_back();
      } else if (tokens.size() > 2 && tokens[2] == ":") {
        first_label = 3;
      } else {
        throw ParseError(line_no, "missing ':' after player index");
      }
      if (parse_count(index_token, line_no) != labels.size() + 1) {
        throw ParseError(line_no, "strategies for player " +
                                      std::to_string(labels.size() + 1) +
                                      " expected");
      }
      std::vector<std::string> player_labels(tokens.begin() + first_label,
                                             tokens.end());
      if (player_labels.empty()) {
        throw ParseError(line_no, "player " +
                                      std::to_string(labels.size() + 1) +
                                      " has no strategies");
      }
      for (std::size_t a = 0; a < player_labels.size(); ++a) {
        if (!valid_label(player_labels[a])) {
          throw ParseError(line_no,
                           "invalid strategy label '" + player_labels[a] + "'");
        }
        for (std::size_t b = 0; b < a; ++b) {
          if (player_labels[a] == player_labels[b]) {
            throw ParseError(line_no, "duplicate strategy label '" +
                                          player_labels[a] + "'");
          }
        }
      }
      labels.push_back(std::move(player_labels));
      if (labels.size() == players) {
        strides.assign(players, 1);
        for (std::size_t p = players - 1; p-- > 0;) {
          strides[p] = strides[p + 1] * labels[p + 1].size();
        }
        cells.resize(strides[0] * labels[0].size());
      }
    } else {
      if (tokens[0] != "payoff" || tokens.size() != 2 * players + 2 ||
          tokens[players + 1] != ":") {
        throw ParseError(line_no, "expected 'payoff <" +
                                      std::to_string(players) + " labels> : <" +
                                      std::to_string(players) + " payoffs>'");
      }
      std::size_t index = 0;
      for (std::size_t p = 0; p < players; ++p) {
        const auto& label = tokens[1 + p];
        std::optional<std::size_t> s;
        for (std::size_t k = 0; k < labels[p].size(); ++k) {
          if (labels[p][k] == label) s = k;
        }
        if (!s) {
          throw ParseError(line_no, "unknown strategy '" + label +
                                        "' for player " +
                                        std::to_string(p + 1));
        }
        index += *s * strides[p];
      }
      if (cells[index]) {
        throw ParseError(line_no, "duplicate payoff line for this profile");
      }
      std::vector<Rational> values;
      for (std::size_t p = 0; p < players; ++p) {
        try {
          values.push_back(Rational::parse(tokens[players + 2 + p]));
        } catch (const InputError& e) {
          throw ParseError(line_no, e.what());
        }
      }
      cells[index] = std::move(values);
    }
    if (end == text.size()) break;
  }

  if (players == 0) throw ParseError(line_no, "missing 'players' line");
  if (labels.size() < players) {
    throw ParseError(line_no, "missing strategies for player " +
                                  std::to_string(labels.size() + 1));
  }
  std::vector<Rational> payoffs;
  payoffs.reserve(cells.size() * players);
  for (std::size_t index = 0; index < cells.size(); ++index) {
    if (!cells[index]) {
      std::string profile;
      std::size_t rest = index;
      for (std::size_t p = 0; p < players; ++p) {
        if (p > 0) profile += ' ';
        profile += labels[p][rest / strides[p]];
        rest %= strides[p];
      }
      throw ParseError(line_no, "missing payoff line for profile (" +
                                    profile + ")");
    }
    for (auto& v : *cells[index]) payoffs.push_back(std::move(v));
  }
  return FiniteGame(std::move(labels), std::move(payoffs));
}

std::string render_game(const FiniteGame& game,
                        const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << '\n';
  const std::size_t n = game.num_players();
  os << "players " << n << '\n';
  for (std::size_t p = 0; p < n; ++p) {
    os << "strategies " << (p + 1) << ':';
    for (const auto& l : game.labels(p)) os << ' ' << l;
    os << '\n';
  }
  for (std::size_t index = 0; index < game.num_profiles(); ++index) {
    const JointProfile profile = game.profile_at(index);
    os << "payoff";
    for (std::size_t p = 0; p < n; ++p) {
      os << ' ' << game.label(p, profile.choices[p]);
    }
    os << " :";
    for (std::size_t p = 0; p < n; ++p) os << ' ' << game.payoff_at(index, p);
    os << '\n';
  }
  return os.str();
}

Restriction parse_restriction(const GamePtr& game, std::string_view literal) {
  const auto parts = split_on(literal, ';');
  if (parts.size() != game->num_players()) {
    throw InputError("restriction literal '" + std::string(literal) +
                     "' names " + std::to_string(parts.size()) +
                     " players, game has " +
                     std::to_string(game->num_players()));
  }
  StrategySets kept(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (split_ws(parts[p]).empty()) continue;
    for (const auto& raw : split_on(parts[p], ',')) {
      const auto words = split_ws(raw);
      if (words.size() != 1) {
        throw InputError("malformed label list '" + parts[p] + "'");
      }
      const auto s = game->find_label(p, words[0]);
      if (!s) {
        throw InputError("unknown strategy '" + words[0] + "' for player " +
                         std::to_string(p + 1));
      }
      kept[p].push_back(*s);
    }
  }
  return Restriction(game, std::move(kept));
}

std::string render_restriction_literal(const Restriction& r) {
  std::string out;
  for (std::size_t p = 0; p < r.num_players(); ++p) {
    if (p > 0) out += ';';
    bool first = true;
    for (StrategyIndex s : r.kept(p)) {
      if (!first) out += ',';
      out += r.game().label(p, s);
      first = false;
    }
  }
  return out;
}

std::string game_hash(const FiniteGame& game) {
  const std::string text = render_game(game);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace nbr
