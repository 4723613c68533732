#include "medialcorr/model_parse.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace medialcorr {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("model string: " + msg);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s) {
  s = trim(s);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail("cannot parse number '" + std::string(s) + "'");
  }
  return value;
}

int parse_int_value(double v) {
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) fail("expected an integer, got " + std::to_string(v));
  return i;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::map<std::string, double, std::less<>> parse_kvlist(std::string_view s) {
  std::map<std::string, double, std::less<>> kv;
  while (!trim(s).empty()) {
    const auto comma = s.find(',');
    std::string_view item = comma == std::string_view::npos ? s : s.substr(0, comma);
    s = comma == std::string_view::npos ? std::string_view{} : s.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) fail("expected key=value, got '" + std::string(item) + "'");
    const std::string keyname(trim(item.substr(0, eq)));
    if (kv.count(keyname)) fail("duplicate key '" + keyname + "'");
    kv.emplace(keyname, parse_number(item.substr(eq + 1)));
  }
  return kv;
}

CopulaModel parse_node(std::string_view s);

CopulaModel parse_compose(std::string_view s) {
  s = trim(s);
  if (s.empty() || s.front() != '[' || s.back() != ']') fail("compose expects [A | B | ...]");
  s = s.substr(1, s.size() - 2);

  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (s[i] == '|' && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));

  std::vector<BlockComposition::Block> blocks;
  int next_coord = 0;
  for (const auto part : parts) {
    CopulaModel sub = parse_node(part);
    std::vector<int> coords(sub.dim());
    for (int& c : coords) c = next_coord++;
    blocks.push_back({std::move(sub), std::move(coords)});
  }
  return CopulaModel::compose(std::move(blocks));
}

CopulaModel parse_node(std::string_view s) {
  s = trim(s);
  if (s.empty()) fail("empty model");

  const auto colon = s.find(':');
  const std::string name(trim(s.substr(0, colon)));
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);

  if (name == "compose") return parse_compose(rest);
  if (name == "countermonotone") {
    if (!trim(rest).empty()) fail("countermonotone takes no parameters");
    return CopulaModel::countermonotone_pair();
  }

  auto kv = parse_kvlist(rest);
  const auto take = [&kv](const char* keyname) {
    const auto it = kv.find(keyname);
    if (it == kv.end()) fail(std::string("missing parameter '") + keyname + "'");
    const double v = it->second;
    kv.erase(it);
    return v;
  };
  const auto finish = [&kv](const CopulaModel& m) {
    if (!kv.empty()) fail("unknown parameter '" + kv.begin()->first + "'");
    return m;
  };

  if (name == "product") return finish(CopulaModel::product(parse_int_value(take("d"))));
  if (name == "comonotone") return finish(CopulaModel::comonotone(parse_int_value(take("d"))));
  if (name == "gumbel") {
    const int d = parse_int_value(take("d"));
    return finish(CopulaModel::gumbel(d, take("delta")));
  }
  if (name == "mo") {
    const double a1 = take("a1");
    return finish(CopulaModel::marshall_olkin(a1, take("a2")));
  }
  fail("unknown family '" + name + "'");
}

}  // namespace

CopulaModel parse_model(const std::string& text) { return parse_node(text); }

std::string format_model(const CopulaModel& model) {
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ProductCopula>) {
          return "product:d=" + std::to_string(node.dim);
        } else if constexpr (std::is_same_v<T, ComonotoneCopula>) {
          return "comonotone:d=" + std::to_string(node.dim);
        } else if constexpr (std::is_same_v<T, CountermonotonePair>) {
          return "countermonotone";
        } else if constexpr (std::is_same_v<T, GumbelCopula>) {
          return "gumbel:d=" + std::to_string(node.dim) + ",delta=" + format_double(node.delta);
        } else if constexpr (std::is_same_v<T, MarshallOlkinCopula>) {
          return "mo:a1=" + format_double(node.alpha1) + ",a2=" + format_double(node.alpha2);
        } else {
          static_assert(std::is_same_v<T, BlockComposition>);
          std::string out = "compose:[";
          for (std::size_t b = 0; b < node.blocks.size(); ++b) {
            if (b) out += " | ";
            out += format_model(node.blocks[b].model);
          }
          return out + "]";
        }
      },
      model.node());
}

}  // namespace medialcorr
