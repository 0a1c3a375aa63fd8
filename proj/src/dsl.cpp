#include "qhm/dsl.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qhm {

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool lookahead_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    size_t after = pos_ + w.size();
    // keywords are followed by '('; a longer identifier is something else
    return after < text_.size() && text_[after] == '(';
  }

  ExprPtr expr() {
    std::vector<ExprPtr> terms{term()};
    while (true) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(prod_of({lit(-1), term()}));
      } else {
        break;
      }
    }
    return sum_of(std::move(terms));
  }

  ExprPtr term() {
    std::vector<ExprPtr> factors{factor()};
    while (accept('*')) factors.push_back(factor());
    return prod_of(std::move(factors));
  }

  ExprPtr factor() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (c == '-') {
      ++pos_;
      return prod_of({lit(-1), factor()});
    }
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return lit(rational_literal());
    if (lookahead_word("e")) {
      pos_ += 1;
      expect('(');
      auto [q, r, s] = linear();
      expect(')');
      return harmonic(q, r, s);
    }
    if (lookahead_word("sinpi")) {
      pos_ += 5;
      return sinpi(axis_arg());
    }
    if (lookahead_word("cospi")) {
      pos_ += 5;
      return cospi(axis_arg());
    }
    if (lookahead_word("abs")) {
      pos_ += 3;
      expect('(');
      ExprPtr e = expr();
      expect(')');
      return abs_of(e);
    }
    if (lookahead_word("conj")) {
      pos_ += 4;
      expect('(');
      ExprPtr e = expr();
      expect(')');
      return conj_of(e);
    }
    if (lookahead_word("chi")) {
      pos_ += 3;
      expect('(');
      ExactScalar lo = scalar_arg(',');
      expect(',');
      ExactScalar hi = scalar_arg(')');
      expect(')');
      return strip(lo, hi);
    }
    if (c == 'x') {
      ++pos_;
      return coord(Axis::X);
    }
    if (c == 'y') {
      ++pos_;
      return coord(Axis::Y);
    }
    fail("expected a factor");
  }

  Axis axis_arg() {
    expect('(');
    char c = peek();
    Axis a;
    if (c == 'x') {
      a = Axis::X;
    } else if (c == 'y') {
      a = Axis::Y;
    } else {
      fail("expected x or y");
    }
    ++pos_;
    expect(')');
    return a;
  }

  // unsigned rational "p" or "p/q"
  Rational rational_literal() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a number");
    Int num(std::string(text_.substr(start, pos_ - start)));
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      size_t dstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == dstart) fail("expected a denominator");
      Int den(std::string(text_.substr(dstart, pos_ - dstart)));
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

  // qx + ry + s with rational q, r, s; implicit '*' before x/y allowed
  std::tuple<Rational, Rational, Rational> linear() {
    Rational q = 0, r = 0, s = 0;
    bool first = true;
    while (true) {
      int sign = 1;
      char c = peek();
      size_t sign_pos = pos_;
      if (c == '+' || c == '-') {
        ++pos_;
        sign = c == '-' ? -1 : 1;
      } else if (!first) {
        break;
      }
      first = false;
      Rational coeff = 1;
      bool have_coeff = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = rational_literal();
        have_coeff = true;
        accept('*');
      }
      char v = peek();
      if (v == 'x') {
        ++pos_;
        q += sign * coeff;
      } else if (v == 'y') {
        ++pos_;
        r += sign * coeff;
      } else if (have_coeff) {
        s += sign * coeff;
      } else {
        throw ParseError("expected a linear term", sign_pos);
      }
    }
    return {q, r, s};
  }

  // full scalar syntax, delimited by `stop` or ')' at depth 0
  ExactScalar scalar_arg(char stop) {
    skip_ws();
    size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (depth == 0 && (c == stop || c == ')')) break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      ++pos_;
    }
    std::string_view inner = text_.substr(start, pos_ - start);
    try {
      return parse_scalar(inner);
    } catch (const ParseError& e) {
      throw ParseError("invalid interval endpoint", start + e.offset);
    }
  }
};

nlohmann::json parse_json(const std::string& text) {
  return nlohmann::json::parse(text);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return ExprParser(text).run(); }

namespace {

std::pair<Params, std::map<int, ExprPtr>> parse_element_body(const std::string& text,
                                                             bool torus_expected) {
  nlohmann::json j = parse_json(text);
  if (!j.is_object()) throw std::invalid_argument("element file must hold a JSON object");
  bool torus = j.contains("space") && j.at("space").get<std::string>() == "torus";
  if (torus != torus_expected) {
    throw std::invalid_argument(torus ? "file is tagged \"space\":\"torus\""
                                      : "file lacks the \"space\":\"torus\" tag");
  }
  int c = j.at("c").get<int>();
  ExactScalar mu = parse_scalar(j.at("mu").get<std::string>());
  ExactScalar nu = parse_scalar(j.at("nu").get<std::string>());
  Params pr(c, mu, nu);
  if (j.contains("d")) {
    long d = j.at("d").get<long>();
    if (pr.d() != 0 && d != pr.d()) {
      throw std::invalid_argument("declared field tag disagrees with mu/nu");
    }
    if (pr.d() == 0 && d != 0 && !is_squarefree(d)) {
      throw std::invalid_argument("field tag must be squarefree");
    }
  }
  std::map<int, ExprPtr> comps;
  for (const auto& entry : j.at("components")) {
    int p = entry.at("p").get<int>();
    if (comps.count(p)) {
      throw std::invalid_argument("component p=" + std::to_string(p) + " appears twice");
    }
    comps[p] = parse_expr(entry.at("expr").get<std::string>());
  }
  return {pr, std::move(comps)};
}

}  // namespace

QhmElement element_from_json(const std::string& text) {
  auto [pr, comps] = parse_element_body(text, false);
  return QhmElement(pr, std::move(comps));
}

QhmElement load_element(const std::string& path) { return element_from_json(slurp(path)); }

CrossedElement crossed_from_json(const std::string& text) {
  auto [pr, comps] = parse_element_body(text, true);
  return CrossedElement(pr, std::move(comps));
}

CrossedElement load_crossed(const std::string& path) { return crossed_from_json(slurp(path)); }

Measure measure_from_json(const std::string& text) {
  nlohmann::json j = parse_json(text);
  std::string type = j.at("type").get<std::string>();
  if (type == "haar") {
    HaarMeasure m;
    if (j.contains("N")) m.n = j.at("N").get<int>();
    if (m.n < 1) throw std::invalid_argument("grid resolution must be positive");
    return m;
  }
  if (type == "atomic") {
    AtomicMeasure m;
    for (const auto& pt : j.at("points")) {
      m.points.push_back(Point{parse_scalar(pt.at(0).get<std::string>()),
                               parse_scalar(pt.at(1).get<std::string>())});
    }
    for (const auto& w : j.at("weights")) {
      ExactScalar s = parse_scalar(w.get<std::string>());
      if (!s.is_rational() || s.sign() <= 0) {
        throw std::invalid_argument("weights must be positive rationals");
      }
      m.weights.push_back(s.rational_part());
    }
    if (m.points.size() != m.weights.size()) {
      throw std::invalid_argument("points and weights must pair up");
    }
    return m;
  }
  throw std::invalid_argument("measure type must be haar or atomic");
}

Measure load_measure(const std::string& path) { return measure_from_json(slurp(path)); }

std::string element_to_json(const QhmElement& a) {
  nlohmann::ordered_json j;
  j["c"] = a.params().c();
  j["mu"] = to_string(a.params().mu());
  j["nu"] = to_string(a.params().nu());
  j["d"] = a.params().d();
  j["components"] = nlohmann::ordered_json::array();
  for (const auto& [p, f] : a.components()) {
    try {
      j["components"].push_back({{"p", p}, {"expr", to_dsl(f)}});
    } catch (const std::domain_error& e) {
      throw std::domain_error("component p=" + std::to_string(p) + " cannot be serialized: " +
                              e.what() + " (only elements built from the expression grammar have a file form)");
    }
  }
  return j.dump(2);
}

}  // namespace qhm
