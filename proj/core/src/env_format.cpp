#include "crmdp/env_format.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "crmdp/errors.hpp"

namespace crmdp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view v, std::size_t line) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, fmt::format("expected a number, got '{}'", v));
  }
  return out;
}

int parse_int(std::string_view v, std::size_t line) {
  int out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, fmt::format("expected an integer, got '{}'", v));
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

}  // namespace

GridEnv parse_env(std::string_view text, std::string name) {
  const auto lines = split_lines(text);
  GridSpec spec;
  spec.name = std::move(name);

  std::size_t i = 0;
  std::map<std::string, std::size_t, std::less<>> seen;
  // Header: key = value lines until the first blank line.
  for (; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    if (line.empty()) break;
    if (line.front() == '#') continue;
    line = trim(line.substr(0, line.find('#')));
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      // A file may omit the header entirely and start with the grid.
      if (seen.empty()) break;
      throw ParseError(i + 1, fmt::format("malformed header line '{}'", line));
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.emplace(key, i + 1).second) {
      throw ParseError(i + 1, fmt::format("duplicate key '{}'", key));
    }
    if (key == "base_reward") {
      spec.base_reward = parse_real(value, i + 1);
    } else if (key == "corrupt_observed") {
      spec.corrupt_observed = parse_real(value, i + 1);
    } else if (key == "horizon") {
      spec.horizon = parse_int(value, i + 1);
      if (spec.horizon <= 0) throw ParseError(i + 1, "horizon must be positive");
    } else if (key == "metric") {
      if (value != "manhattan") {
        throw ParseError(i + 1, fmt::format("unsupported metric '{}'", value));
      }
    } else if (key == "metric_scale") {
      spec.metric_scale = parse_real(value, i + 1);
      if (!(spec.metric_scale > 0.0)) throw ParseError(i + 1, "metric_scale must be positive");
    } else if (key == "reward_rule") {
      if (value != "chebyshev_to_goal") {
        throw ParseError(i + 1, fmt::format("unsupported reward_rule '{}'", value));
      }
    } else {
      throw ParseError(i + 1, fmt::format("unknown key '{}'", key));
    }
  }
  while (i < lines.size() && trim(lines[i]).empty()) ++i;

  std::optional<GridState> goal, start;
  int width = -1;
  int row = 0;
  for (; i < lines.size(); ++i) {
    const std::string_view line = trim(lines[i]);
    if (line.empty()) {
      // Trailing blank lines are fine; anything after them is not.
      for (std::size_t k = i; k < lines.size(); ++k) {
        if (!trim(lines[k]).empty()) throw ParseError(k + 1, "unexpected content after grid");
      }
      break;
    }
    if (width < 0) width = static_cast<int>(line.size());
    if (static_cast<int>(line.size()) != width) {
      throw ParseError(i + 1, fmt::format("row has {} cells, expected {}", line.size(), width));
    }
    for (int col = 0; col < width; ++col) {
      const GridState cell{row, col};
      switch (line[static_cast<std::size_t>(col)]) {
        case '.':
          break;
        case 'G':
          if (goal) throw ParseError(i + 1, "more than one 'G' cell");
          goal = cell;
          break;
        case 'A':
          if (start) throw ParseError(i + 1, "more than one 'A' cell");
          start = cell;
          break;
        case 'X':
          spec.corrupt_cells.push_back(cell);
          break;
        default:
          throw ParseError(i + 1, fmt::format("unknown cell character '{}'",
                                              line[static_cast<std::size_t>(col)]));
      }
    }
    ++row;
  }
  if (row == 0) throw ParseError(lines.size(), "missing grid");
  if (!goal) throw ParseError(lines.size(), "missing 'G' cell");
  if (!start) throw ParseError(lines.size(), "missing 'A' cell");

  spec.width = width;
  spec.height = row;
  spec.goal = *goal;
  spec.start = *start;
  return GridEnv(std::move(spec));
}

std::string serialize_env(const GridEnv& env) {
  const GridSpec& g = env.spec();
  std::string out;
  out += fmt::format("base_reward = {}\n", g.base_reward);
  out += fmt::format("corrupt_observed = {}\n", g.corrupt_observed);
  out += fmt::format("horizon = {}\n", g.horizon);
  out += "metric = manhattan\n";
  if (g.metric_scale != 1.0) out += fmt::format("metric_scale = {}\n", g.metric_scale);
  out += "reward_rule = chebyshev_to_goal\n\n";
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      const GridState cell{r, c};
      char ch = '.';
      if (cell == g.goal) {
        ch = 'G';
      } else if (cell == g.start) {
        ch = 'A';
      } else if (std::binary_search(g.corrupt_cells.begin(), g.corrupt_cells.end(), cell)) {
        ch = 'X';
      }
      out += ch;
    }
    out += '\n';
  }
  return out;
}

GridEnv load_env(const std::string& name_or_path) {
  if (auto env = builtin_env(name_or_path)) return *std::move(env);
  std::ifstream in(name_or_path);
  if (!in) throw std::runtime_error(fmt::format("cannot open environment '{}'", name_or_path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_env(buf.str(), std::filesystem::path(name_or_path).stem().string());
}

}  // namespace crmdp
