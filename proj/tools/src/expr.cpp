#include "pstcli/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "pstkit/cones.hpp"
#include "pstkit/error.hpp"
#include "pstkit/graph_io.hpp"
#include "pstkit/products.hpp"

namespace pstcli {

ExprError::ExprError(std::size_t offset, const std::string& what)
    : std::runtime_error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

namespace {

constexpr std::size_t kMaxOrder = 4096;

struct OpShape {
  std::string_view name;
  std::size_t min_graphs;
  std::size_t max_graphs;
  std::size_t reals;
  std::vector<std::string_view> keys;
  bool semicolons;
};

const std::vector<OpShape>& op_shapes() {
  static const std::vector<OpShape> shapes = {
      {"cart", 2, 2, 0, {}, false},       {"weak", 2, 2, 0, {}, false},
      {"lex", 2, 2, 0, {}, false},        {"join", 2, 2, 0, {}, false},
      {"glex", 3, 3, 0, {}, false},       {"cylcone", 3, 3, 0, {}, true},
      {"gluedcone", 2, 3, 0, {}, true},   {"doublecone", 1, 1, 0, {"b", "alpha"}, true},
      {"p4", 0, 0, 0, {"w", "loop"}, true}, {"scale", 1, 1, 1, {}, true},
  };
  return shapes;
}

const OpShape* find_op(std::string_view name) {
  for (const auto& s : op_shapes()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool is_single_int_atom(std::string_view h) {
  return h == "K" || h == "Kbar" || h == "P" || h == "C" || h == "Q" || h == "I" || h == "J";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_top() {
    Expr e = expression();
    skip_ws();
    if (pos_ != text_.size()) throw ExprError(pos_, "unexpected trailing input");
    return e;
  }

  Real parse_real_top() {
    skip_ws();
    Real r = real();
    skip_ws();
    if (pos_ != text_.size()) throw ExprError(pos_, "unexpected trailing input in number");
    return r;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) return {};
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t value = 0;
    const auto* first = text_.data() + pos_;
    const auto* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) throw ExprError(start, "malformed integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  void expect(char c, std::string_view what) {
    skip_ws();
    if (at_end()) throw ExprError(pos_, "unexpected end of input, expected " + std::string(what));
    if (peek() != c) throw ExprError(pos_, "expected " + std::string(what));
    ++pos_;
  }

  Expr expression() {
    skip_ws();
    Expr e;
    e.offset = pos_;
    e.head = identifier();
    if (e.head.empty()) {
      throw ExprError(pos_, at_end() ? "unexpected end of input, expected a graph" : "expected a graph");
    }
    skip_ws();
    if (peek() == ':') {
      ++pos_;
      atom_body(e);
    } else if (peek() == '(') {
      ++pos_;
      operator_body(e);
    } else if (find_op(e.head)) {
      throw ExprError(pos_, "expected '(' after " + e.head);
    } else {
      throw ExprError(e.offset, "unknown atom '" + e.head + "'");
    }
    return e;
  }

  void atom_body(Expr& e) {
    if (is_single_int_atom(e.head)) {
      e.ints.push_back(integer());
    } else if (e.head == "circ") {
      e.ints.push_back(integer());
      expect(':', "':' before the connection set");
      e.ints.push_back(integer());
      for (;;) {
        const std::size_t save = pos_;
        skip_ws();
        if (peek() != ',') {
          pos_ = save;
          break;
        }
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
          pos_ = save;
          break;
        }
        e.ints.push_back(integer());
      }
    } else if (e.head == "file") {
      skip_ws();
      const std::size_t start = pos_;
      while (!at_end() && peek() != ',' && peek() != ';' && peek() != ')' &&
             !std::isspace(static_cast<unsigned char>(peek()))) {
        ++pos_;
      }
      if (pos_ == start) throw ExprError(start, "empty file path");
      e.path = std::string(text_.substr(start, pos_ - start));
    } else {
      throw ExprError(e.offset, "unknown atom '" + e.head + "'");
    }
  }

  bool starts_real() const {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' || c == '(') return true;
    const auto rest = text_.substr(pos_);
    auto word = [&](std::string_view w) {
      if (rest.substr(0, w.size()) != w) return false;
      return rest.size() == w.size() || !std::isalnum(static_cast<unsigned char>(rest[w.size()]));
    };
    return word("pi") || word("sqrt");
  }

  // Identifier immediately followed by '=' (whitespace allowed).
  std::optional<std::string> named_key() {
    const std::size_t save = pos_;
    std::string key = identifier();
    skip_ws();
    if (!key.empty() && peek() == '=') {
      ++pos_;
      return key;
    }
    pos_ = save;
    return std::nullopt;
  }

  void operator_body(Expr& e) {
    const OpShape* shape = find_op(e.head);
    if (!shape) throw ExprError(e.offset, "unknown operator '" + e.head + "'");
    skip_ws();
    if (peek() == ')') {
      ++pos_;
    } else {
      for (;;) {
        skip_ws();
        const std::size_t arg_at = pos_;
        if (auto key = named_key()) {
          bool known = false;
          for (auto k : shape->keys) known = known || k == *key;
          if (!known) throw ExprError(arg_at, e.head + " has no parameter '" + *key + "'");
          for (const auto& p : e.params) {
            if (p.first == *key) throw ExprError(arg_at, "parameter '" + *key + "' given twice");
          }
          skip_ws();
          e.params.emplace_back(std::move(*key), real());
        } else if (starts_real()) {
          e.reals.push_back(real());
        } else {
          e.args.push_back(expression());
        }
        skip_ws();
        if (at_end()) throw ExprError(pos_, "unclosed '(' opened by " + e.head);
        if (peek() == ',' || peek() == ';') {
          ++pos_;
          continue;
        }
        if (peek() == ')') {
          ++pos_;
          break;
        }
        throw ExprError(pos_, "expected ',', ';' or ')'");
      }
    }
    const std::size_t g = e.args.size();
    if (g < shape->min_graphs || g > shape->max_graphs) {
      const std::string want = shape->min_graphs == shape->max_graphs
                                   ? std::to_string(shape->min_graphs)
                                   : std::to_string(shape->min_graphs) + " or " + std::to_string(shape->max_graphs);
      throw ExprError(e.offset, e.head + " takes " + want + " graph argument(s), got " + std::to_string(g));
    }
    if (e.reals.size() != shape->reals) {
      throw ExprError(e.offset, e.head + " takes " + std::to_string(shape->reals) + " plain number(s), got " +
                                    std::to_string(e.reals.size()));
    }
  }

  // ---- reals ----

  Real real() {
    const std::size_t start = pos_;
    const double v = sum();
    std::string text;
    for (char c : text_.substr(start, pos_ - start)) {
      if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    }
    if (!std::isfinite(v)) throw ExprError(start, "number is not finite");
    return {v, text};
  }

  double sum() {
    double v = product();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v += product();
      } else if (peek() == '-') {
        ++pos_;
        v -= product();
      } else {
        return v;
      }
    }
  }

  double product() {
    double v = unary();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v *= unary();
      } else if (peek() == '/') {
        ++pos_;
        v /= unary();
      } else {
        return v;
      }
    }
  }

  double unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return primary();
  }

  double primary() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() == '(') {
      ++pos_;
      const double v = sum();
      expect(')', "')'");
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      const std::string word = identifier();
      if (word == "pi") return std::numbers::pi;
      if (word == "sqrt") {
        expect('(', "'(' after sqrt");
        const double v = sum();
        expect(')', "')'");
        if (v < 0.0) throw ExprError(start, "sqrt of a negative number");
        return std::sqrt(v);
      }
      throw ExprError(start, "malformed number '" + word + "'");
    }
    std::size_t end = pos_;
    while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) ++end;
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
      if (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) {
        end = exp;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      }
    }
    double v = 0.0;
    const auto* first = text_.data() + pos_;
    const auto* last = text_.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (end == pos_ || ec != std::errc() || ptr != last) throw ExprError(start, "malformed number");
    pos_ = end;
    return v;
  }
};

std::string join_args(const Expr& e) {
  const OpShape* shape = find_op(e.head);
  const std::string sep = shape && shape->semicolons ? "; " : ", ";
  std::string out;
  auto add = [&](const std::string& piece) {
    if (!out.empty()) out += sep;
    out += piece;
  };
  for (const auto& a : e.args) add(print_expr(a));
  for (const auto& r : e.reals) add(r.text);
  for (const auto& [k, r] : e.params) add(k + "=" + r.text);
  return out;
}

double param(const Expr& e, std::string_view key, std::optional<double> fallback) {
  for (const auto& [k, r] : e.params) {
    if (k == key) return r.value;
  }
  if (!fallback) pst::fail(pst::Errc::invalid_argument, e.head + " needs " + std::string(key) + "=");
  return *fallback;
}

std::size_t checked_order(std::size_t n, const std::string& what) {
  if (n > kMaxOrder) {
    pst::fail(pst::Errc::invalid_size, what + " would have " + std::to_string(n) + " vertices (limit " +
                                           std::to_string(kMaxOrder) + ")");
  }
  return n;
}

}  // namespace

bool Expr::is_atom() const noexcept { return !find_op(head); }

Expr parse_expr(std::string_view text) { return Parser(text).parse_top(); }

Real parse_real(std::string_view text) { return Parser(text).parse_real_top(); }

std::string print_expr(const Expr& e) {
  if (!e.is_atom()) return e.head + "(" + join_args(e) + ")";
  if (e.head == "file") return "file:" + e.path;
  std::string out = e.head + ":" + std::to_string(e.ints.at(0));
  if (e.head == "circ") {
    for (std::size_t i = 1; i < e.ints.size(); ++i) out += (i == 1 ? ":" : ",") + std::to_string(e.ints[i]);
  }
  return out;
}

pst::Graph eval_expr(const Expr& e) {
  using namespace pst;
  if (e.is_atom()) {
    if (e.head == "file") return read_graph_file(e.path);
    const std::size_t n = e.ints.at(0);
    if (e.head == "Q") {
      if (n > 12) fail(Errc::invalid_size, "Q:" + std::to_string(n) + " exceeds the 4096-vertex limit");
      return make_hypercube(n);
    }
    checked_order(n, e.head + ":" + std::to_string(n));
    if (e.head == "K") return make_complete(n);
    if (e.head == "Kbar") return make_empty(n);
    if (e.head == "P") return make_path(n);
    if (e.head == "C") return make_cycle(n);
    if (e.head == "I") return make_identity(n);
    if (e.head == "J") return make_all_ones(n);
    std::vector<std::size_t> set(e.ints.begin() + 1, e.ints.end());
    return make_circulant(n, set);
  }

  std::vector<Graph> gs;
  for (const auto& a : e.args) gs.push_back(eval_expr(a));
  const std::string& h = e.head;
  if (h == "cart" || h == "weak" || h == "lex") {
    checked_order(gs[0].order() * gs[1].order(), h);
    if (h == "cart") return cartesian(gs[0], gs[1]);
    if (h == "weak") return weak(gs[0], gs[1]);
    return lexicographic(gs[0], gs[1]);
  }
  if (h == "glex") {
    checked_order(gs[0].order() * gs[2].order(), h);
    return generalized_lexicographic(gs[0], gs[1], gs[2]);
  }
  if (h == "join") {
    checked_order(gs[0].order() + gs[1].order(), h);
    return join(gs[0], gs[1]);
  }
  if (h == "doublecone") {
    const double b = param(e, "b", 0.0);
    if (b != 0.0 && b != 1.0) fail(Errc::invalid_argument, "doublecone b must be 0 or 1");
    return double_cone({gs[0], static_cast<int>(b), param(e, "alpha", 1.0)});
  }
  if (h == "gluedcone") {
    if (gs.size() == 2) return glued_double_cone(gs[0], gs[0], gs[1]);
    return glued_double_cone(gs[0], gs[1], gs[2]);
  }
  if (h == "cylcone") return cylindrical_cone(gs[0], gs[1], gs[2]);
  if (h == "p4") return weighted_p4(param(e, "w", std::nullopt), param(e, "loop", 0.0));
  if (h == "scale") return scaled(gs[0], e.reals.at(0).value);
  fail(Errc::unsupported, "operator " + h + " has no evaluator");
}

pst::Graph eval_expr(std::string_view text) { return eval_expr(parse_expr(text)); }

}  // namespace pstcli
