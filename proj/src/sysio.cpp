#include "bigres/sysio.hpp"

#include <fstream>
#include <sstream>
#include <variant>
#include <vector>

#include <json.hpp>

namespace bigres {

SystemFileError::SystemFileError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(line == 0 ? message
                                   : std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

using json = nlohmann::json;
using PathStep = std::variant<std::string, std::size_t>;
using Path = std::vector<PathStep>;

// Finds where the value at `path` starts in already validated JSON text.
// nlohmann::json keeps no source positions, so the text is walked again.
class Locator {
 public:
  explicit Locator(std::string_view text) : s_(text) {}

  std::size_t find(const Path& path) {
    pos_ = 0;
    ws();
    for (const auto& step : path) {
      if (pos_ >= s_.size()) break;
      if (const auto* key = std::get_if<std::string>(&step)) {
        if (s_[pos_] != '{') break;
        ++pos_;
        bool found = false;
        for (;;) {
          ws();
          if (pos_ >= s_.size() || s_[pos_] == '}') break;
          const std::size_t k0 = pos_;
          skip_string();
          const std::string name = json::parse(s_.substr(k0, pos_ - k0)).get<std::string>();
          ws();
          ++pos_;  // ':'
          ws();
          if (name == *key) {
            found = true;
            break;
          }
          skip_value();
          ws();
          if (pos_ < s_.size() && s_[pos_] == ',') ++pos_;
        }
        if (!found) break;
      } else {
        if (s_[pos_] != '[') break;
        ++pos_;
        ws();
        const std::size_t index = std::get<std::size_t>(step);
        for (std::size_t i = 0; i < index && pos_ < s_.size() && s_[pos_] != ']'; ++i) {
          skip_value();
          ws();
          if (pos_ < s_.size() && s_[pos_] == ',') ++pos_;
          ws();
        }
      }
    }
    return pos_;
  }

 private:
  void ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }
  void skip_string() {
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') pos_ += s_[pos_] == '\\' ? 2 : 1;
    ++pos_;
  }
  void skip_value() {
    if (pos_ >= s_.size()) return;
    const char c = s_[pos_];
    if (c == '"') {
      skip_string();
    } else if (c == '{' || c == '[') {
      int depth = 0;
      while (pos_ < s_.size()) {
        const char x = s_[pos_];
        if (x == '"') {
          skip_string();
          continue;
        }
        if (x == '{' || x == '[') ++depth;
        if (x == '}' || x == ']') --depth;
        ++pos_;
        if (depth == 0) return;
      }
    } else {
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '}' && s_[pos_] != ' ' &&
             s_[pos_] != '\n' && s_[pos_] != '\r' && s_[pos_] != '\t')
        ++pos_;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const Path& path, const std::string& message) const {
    Locator loc(text_);
    const auto [line, col] = line_column(text_, loc.find(path));
    throw SystemFileError(message, line, col);
  }

  const json& member(const json& obj, const Path& at, const std::string& key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(at, "missing key \"" + key + "\"");
    return *it;
  }

  int small_int(const json& v, const Path& at, const std::string& what) const {
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 100000)
      fail(at, what + " must be a nonnegative integer");
    return static_cast<int>(v.get<long long>());
  }

  FieldSpec field(const json& root) const {
    const Path at{std::string("field")};
    const json& v = member(root, {}, "field");
    try {
      if (v.is_string()) return FieldSpec::parse(v.get<std::string>());
      if (v.is_number_unsigned()) return FieldSpec::prime(v.get<std::uint64_t>());
    } catch (const std::exception& e) {
      fail(at, e.what());
    }
    fail(at, "field must be \"Q\", \"GF(p)\" or a prime");
  }

  BiDegree degree(const json& root) const {
    const json& v = member(root, {}, "d");
    if (!v.is_array() || v.size() != 2) fail({std::string("d")}, "d must be [d1, d2]");
    return {small_int(v[0], {std::string("d"), std::size_t{0}}, "d1"),
            small_int(v[1], {std::string("d"), std::size_t{1}}, "d2")};
  }

  template <class F>
  SystemF<F> system(const F& f, const json& root, BiDegree d) const {
    const json& polys = member(root, {}, "polys");
    const Path pp{std::string("polys")};
    if (!polys.is_array() || polys.size() != 3) fail(pp, "polys must hold exactly three polynomials");
    std::array<BiPoly<F>, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
      const Path pi{std::string("polys"), i};
      if (!polys[i].is_array()) fail(pi, "a polynomial is a list of terms");
      out[i] = BiPoly<F>(f, d);
      for (std::size_t k = 0; k < polys[i].size(); ++k) {
        const json& term = polys[i][k];
        Path pt{std::string("polys"), i, k};
        if (!term.is_array() || term.size() != 5) fail(pt, "a term is [coefficient, e_s, e_t, e_u, e_v]");
        int e[4];
        for (std::size_t j = 0; j < 4; ++j) {
          Path pe = pt;
          pe.emplace_back(j + 1);
          e[j] = small_int(term[j + 1], pe, "an exponent");
        }
        if (e[0] + e[1] != d.a1 || e[2] + e[3] != d.a2)
          fail(pt, "term of degree (" + std::to_string(e[0] + e[1]) + "," + std::to_string(e[2] + e[3]) +
                       ") in a system of degree " + d.to_string());
        Path pc = pt;
        pc.emplace_back(std::size_t{0});
        typename F::Element c;
        try {
          if (term[0].is_string())
            c = f.parse(term[0].get<std::string>());
          else if (term[0].is_number_integer())
            c = f.from_int(term[0].get<std::int64_t>());
          else
            fail(pc, "coefficients are integers or \"num/den\" strings");
        } catch (const SystemFileError&) {
          throw;
        } catch (const std::exception& ex) {
          fail(pc, std::string("bad coefficient: ") + ex.what());
        }
        out[i].add_term(e[0], e[2], c);
      }
    }
    try {
      return SystemF<F>(f, d, out);
    } catch (const std::invalid_argument& e) {
      fail(pp, e.what());
    }
  }

  AnySystem read() const {
    json root;
    try {
      root = json::parse(text_);
    } catch (const json::parse_error& e) {
      const auto [line, col] = line_column(text_, e.byte == 0 ? 0 : e.byte - 1);
      // Drop nlohmann's "[json.exception...] parse error at line L, column C: " prefix.
      std::string detail = e.what();
      const auto colon = detail.find(": ", detail.find("column"));
      if (colon != std::string::npos) detail = detail.substr(colon + 2);
      throw SystemFileError("invalid JSON: " + detail, line, col);
    }
    if (!root.is_object()) fail({}, "a system file is a JSON object");
    const FieldSpec fs = field(root);
    const BiDegree d = degree(root);
    if (fs.is_prime_field()) return system(PrimeField(fs.p), root, d);
    return system(RationalField{}, root, d);
  }

 private:
  std::string_view text_;
};

template <class F>
std::string to_json_impl(const SystemF<F>& sys) {
  const F& f = sys.field();
  const BiDegree d = sys.d();
  nlohmann::ordered_json j;
  j["field"] = f.spec().name();
  j["d"] = {d.a1, d.a2};
  auto polys = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    auto terms = nlohmann::ordered_json::array();
    for (int es = d.a1; es >= 0; --es)
      for (int eu = d.a2; eu >= 0; --eu) {
        const auto c = sys[i].coeff(es, eu);
        if (f.is_zero(c)) continue;
        terms.push_back({f.to_string(c), es, d.a1 - es, eu, d.a2 - eu});
      }
    polys.push_back(terms);
  }
  j["polys"] = polys;
  return j.dump() + "\n";
}

}  // namespace

AnySystem parse_system(std::string_view text) { return Reader(text).read(); }

AnySystem read_system_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SystemFileError("cannot read " + path, 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  return parse_system(text);
}

std::string system_to_json(const AnySystem& sys) {
  return std::visit([](const auto& s) { return to_json_impl(s); }, sys);
}

}  // namespace bigres
