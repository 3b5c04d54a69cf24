#pragma once

#include <memory>

#include <json.hpp>

#include "qshuffle/shuffle.hpp"

namespace qshuffle {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- quiver configuration (strict JSON schema) ----

inline Quiver parse_quiver(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("quiver config: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("quiver config: top level must be an object");
  for (auto& [key, val] : j.items()) {
    (void)val;
    if (key != "vertices" && key != "arrows" && key != "framing_k" && key != "framing_l")
      throw parse_error("quiver config: unknown key \"" + key + "\"");
  }
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw parse_error("quiver config: missing \"vertices\" array");
  std::vector<std::string> vertices;
  for (auto& v : j["vertices"]) {
    if (!v.is_string()) throw parse_error("quiver config: vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<Arrow> arrows;
  if (j.contains("arrows")) {
    if (!j["arrows"].is_array()) throw parse_error("quiver config: \"arrows\" must be an array");
    for (auto& a : j["arrows"]) {
      if (!a.is_object()) throw parse_error("quiver config: each arrow must be an object");
      for (auto& [key, val] : a.items()) {
        (void)val;
        if (key != "id" && key != "source" && key != "target")
          throw parse_error("quiver config: unknown arrow key \"" + key + "\"");
      }
      if (!a.contains("id") || !a.contains("source") || !a.contains("target"))
        throw parse_error("quiver config: arrow needs id, source, target");
      arrows.push_back({a["id"].get<std::string>(), a["source"].get<std::string>(),
                        a["target"].get<std::string>()});
    }
  }
  auto framing = [&](const char* key) {
    std::vector<int> f(vertices.size(), 0);
    if (!j.contains(key)) return f;
    if (!j[key].is_object()) throw parse_error(std::string("quiver config: \"") + key + "\" must be an object");
    for (auto& [vert, val] : j[key].items()) {
      auto it = std::find(vertices.begin(), vertices.end(), vert);
      if (it == vertices.end())
        throw parse_error(std::string("quiver config: ") + key + " references undeclared vertex \"" + vert + "\"");
      if (!val.is_number_integer() || val.get<int>() < 0)
        throw parse_error(std::string("quiver config: ") + key + " values must be nonnegative integers");
      f[static_cast<size_t>(it - vertices.begin())] = val.get<int>();
    }
    return f;
  };
  std::vector<int> fk = framing("framing_k"), fl = framing("framing_l");
  try {
    return Quiver(std::move(vertices), std::move(arrows), std::move(fk), std::move(fl));
  } catch (const quiver_error& e) {
    throw parse_error(std::string("quiver config: ") + e.what());
  }
}

inline std::string quiver_to_json(const Quiver& q) {
  nlohmann::json j;
  j["vertices"] = q.vertices();
  j["arrows"] = nlohmann::json::array();
  for (auto& a : q.arrows())
    j["arrows"].push_back({{"id", a.id}, {"source", a.source}, {"target", a.target}});
  j["framing_k"] = nlohmann::json::object();
  j["framing_l"] = nlohmann::json::object();
  for (int i = 0; i < q.n_vertices(); ++i) {
    j["framing_k"][q.vertex_name(i)] = q.framing_k(i);
    j["framing_l"][q.vertex_name(i)] = q.framing_l(i);
  }
  return j.dump();
}

// ---- shuffle element expressions ----
//
//   expr := ['-'] term (('+'|'-') term)*
//   term := atom ('*' atom)*
//   atom := gen | INT | PARAM | '(' expr ')'
//   gen  := ('e'|'f') '[' dims ';' poly ']'        dims like "1=2,2=1"
//   poly := Laurent expression in z[vertex,index], q, t_<arrowid>, with '^' INT

namespace detail {

struct Token {
  enum Kind { Ident, Int, Sym, End } kind;
  std::string text;
  size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Int, s.substr(i, j - i), i});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), i});
      i = j;
    } else if (std::string("+-*^()[],;=").find(c) != std::string::npos) {
      out.push_back({Token::Sym, std::string(1, c), i});
      ++i;
    } else {
      throw parse_error("unexpected character '" + std::string(1, c) + "' at position " +
                        std::to_string(i));
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

}  // namespace detail

// expression tree over generators, integers and parameters
struct ExprNode {
  enum Kind { Add, Sub, Mul, Gen, Scalar } kind;
  std::unique_ptr<ExprNode> lhs, rhs;  // Add/Sub/Mul
  // Gen payload
  Side side = Side::Plus;
  DimVector dims;
  Poly poly;  // g for Gen, value for Scalar
};

class ExprParser {
 public:
  ExprParser(const Quiver& q, const std::string& text)
      : q_(q), toks_(detail::tokenize(text)) {}

  std::unique_ptr<ExprNode> parse() {
    auto e = parse_expr(false);
    expect_end();
    return e;
  }

 private:
  using Token = detail::Token;

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool accept_sym(const char* s) {
    if (peek().kind == Token::Sym && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_sym(const char* s) {
    if (!accept_sym(s))
      throw parse_error("expected '" + std::string(s) + "' at position " +
                        std::to_string(peek().pos));
  }
  void expect_end() {
    if (peek().kind != Token::End)
      throw parse_error("unexpected trailing input at position " + std::to_string(peek().pos));
  }

  static std::unique_ptr<ExprNode> node(ExprNode::Kind k, std::unique_ptr<ExprNode> l,
                                        std::unique_ptr<ExprNode> r) {
    auto n = std::make_unique<ExprNode>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }
  static std::unique_ptr<ExprNode> scalar(Poly p) {
    auto n = std::make_unique<ExprNode>();
    n->kind = ExprNode::Scalar;
    n->poly = std::move(p);
    return n;
  }

  // in_poly selects the inner grammar (z variables and '^' allowed, gens not)
  std::unique_ptr<ExprNode> parse_expr(bool in_poly) {
    std::unique_ptr<ExprNode> acc;
    if (accept_sym("-"))
      acc = node(ExprNode::Sub, scalar(Poly(0)), parse_term(in_poly));
    else
      acc = parse_term(in_poly);
    while (true) {
      if (accept_sym("+"))
        acc = node(ExprNode::Add, std::move(acc), parse_term(in_poly));
      else if (accept_sym("-"))
        acc = node(ExprNode::Sub, std::move(acc), parse_term(in_poly));
      else
        return acc;
    }
  }

  std::unique_ptr<ExprNode> parse_term(bool in_poly) {
    auto acc = parse_atom(in_poly);
    while (accept_sym("*")) acc = node(ExprNode::Mul, std::move(acc), parse_atom(in_poly));
    return acc;
  }

  int parse_int() {
    bool neg = accept_sym("-");
    if (peek().kind != Token::Int)
      throw parse_error("expected integer at position " + std::to_string(peek().pos));
    int v = std::stoi(take().text);
    return neg ? -v : v;
  }

  std::string parse_name() {
    if (peek().kind != Token::Ident && peek().kind != Token::Int)
      throw parse_error("expected identifier at position " + std::to_string(peek().pos));
    return take().text;
  }

  std::unique_ptr<ExprNode> parse_atom(bool in_poly) {
    const Token& t = peek();
    if (t.kind == Token::Sym && t.text == "(") {
      take();
      auto e = parse_expr(in_poly);
      expect_sym(")");
      return maybe_power(std::move(e), in_poly);
    }
    if (t.kind == Token::Int) {
      take();
      return scalar(Poly(Int(t.text)));
    }
    if (t.kind == Token::Ident) {
      if (!in_poly && (t.text == "e" || t.text == "f")) return parse_gen(t.text == "f");
      if (t.text == "q") {
        take();
        return maybe_power(scalar(Poly::var(sym_q())), in_poly);
      }
      if (t.text.size() > 2 && t.text.rfind("t_", 0) == 0) {
        std::string arrow = t.text.substr(2);
        bool known = false;
        for (auto& a : q_.arrows()) known = known || a.id == arrow;
        if (!known)
          throw parse_error("unknown arrow id \"" + arrow + "\" at position " +
                            std::to_string(t.pos));
        take();
        return maybe_power(scalar(Poly::var(sym_arrow(arrow))), in_poly);
      }
      if (in_poly && t.text == "z") {
        take();
        expect_sym("[");
        std::string vertex = parse_name();
        q_.vertex_index(vertex);  // throws on unknown vertex
        expect_sym(",");
        int index = parse_int();
        expect_sym("]");
        if (index < 1)
          throw parse_error("variable index must be positive at position " +
                            std::to_string(t.pos));
        return maybe_power(scalar(Poly::var(sym_z(vertex, index))), in_poly);
      }
    }
    throw parse_error("unexpected token \"" + t.text + "\" at position " +
                      std::to_string(t.pos));
  }

  std::unique_ptr<ExprNode> maybe_power(std::unique_ptr<ExprNode> e, bool in_poly) {
    if (!in_poly || !accept_sym("^")) return e;
    int k = parse_int();
    Poly base = eval_poly(*e);
    Poly out(1);
    if (k >= 0) {
      out = ipow(base, k);
    } else {
      // negative powers require a single-term base (a unit)
      if (base.n_terms() != 1)
        throw parse_error("negative power of a non-monomial in expression");
      auto& [m, c] = *base.terms().begin();
      if (c != 1 && c != -1) throw parse_error("negative power of a non-unit coefficient");
      out = Poly::term(c == 1 ? Int(1) : ((-k) % 2 ? Int(-1) : Int(1)), m.pow(k));
    }
    return scalar(out);
  }

  Poly eval_poly(const ExprNode& n) {
    switch (n.kind) {
      case ExprNode::Scalar:
        return n.poly;
      case ExprNode::Add:
        return eval_poly(*n.lhs) + eval_poly(*n.rhs);
      case ExprNode::Sub:
        return eval_poly(*n.lhs) - eval_poly(*n.rhs);
      case ExprNode::Mul:
        return eval_poly(*n.lhs) * eval_poly(*n.rhs);
      default:
        throw parse_error("generator not allowed inside a coefficient polynomial");
    }
  }

  std::unique_ptr<ExprNode> parse_gen(bool minus) {
    size_t at = peek().pos;
    take();  // 'e' or 'f'
    expect_sym("[");
    DimVector dims = dim_zero(q_);
    while (true) {
      std::string vertex = parse_name();
      int vi;
      try {
        vi = q_.vertex_index(vertex);
      } catch (const quiver_error& e) {
        throw parse_error(std::string(e.what()) + " at position " + std::to_string(at));
      }
      expect_sym("=");
      int count = parse_int();
      if (count < 0) throw parse_error("negative dimension in generator at position " +
                                       std::to_string(at));
      dims[static_cast<size_t>(vi)] = count;
      if (!accept_sym(",")) break;
    }
    expect_sym(";");
    auto gexpr = parse_expr(true);
    expect_sym("]");
    auto n = std::make_unique<ExprNode>();
    n->kind = ExprNode::Gen;
    n->side = minus ? Side::Minus : Side::Plus;
    n->dims = std::move(dims);
    n->poly = eval_poly(*gexpr);
    return n;
  }

  const Quiver& q_;
  std::vector<detail::Token> toks_;
  size_t pos_ = 0;
};

inline std::unique_ptr<ExprNode> parse_expr_tree(const Quiver& q, const std::string& text) {
  return ExprParser(q, text).parse();
}

namespace detail {

struct EvalValue {
  std::optional<Side> side;
  DimVector hdeg;
  Poly poly;
};

inline EvalValue eval_node(const Quiver& q, const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Scalar:
      return {std::nullopt, dim_zero(q), n.poly};
    case ExprNode::Gen: {
      ShuffleElement e = gen_e(q, n.dims, n.poly, n.side);
      return {n.side, e.hdeg(), e.poly()};
    }
    case ExprNode::Add:
    case ExprNode::Sub: {
      EvalValue a = eval_node(q, *n.lhs);
      EvalValue b = eval_node(q, *n.rhs);
      // a bare zero (e.g. from unary minus) lives in every degree
      if (a.poly.is_zero() && !a.side) a.hdeg = b.hdeg;
      if (b.poly.is_zero() && !b.side) b.hdeg = a.hdeg;
      if (a.hdeg != b.hdeg)
        throw parse_error("cannot add elements of different horizontal degree");
      if (a.side && b.side && *a.side != *b.side)
        throw parse_error("cannot add elements of opposite sides");
      return {a.side ? a.side : b.side, a.hdeg,
              n.kind == ExprNode::Add ? a.poly + b.poly : a.poly - b.poly};
    }
    case ExprNode::Mul: {
      EvalValue a = eval_node(q, *n.lhs);
      EvalValue b = eval_node(q, *n.rhs);
      if (a.side && b.side && *a.side != *b.side)
        throw parse_error("cannot multiply elements of opposite sides");
      Side s = a.side ? *a.side : (b.side ? *b.side : Side::Plus);
      ShuffleElement ea(q, s, a.hdeg, a.poly);
      ShuffleElement eb(q, s, b.hdeg, b.poly);
      ShuffleElement r = shuffle_mul(q, ea, eb);
      return {a.side ? a.side : b.side, r.hdeg(), r.poly()};
    }
  }
  throw parse_error("malformed expression tree");
}

}  // namespace detail

inline ShuffleElement eval_expr(const Quiver& q, const ExprNode& tree) {
  detail::EvalValue v = detail::eval_node(q, tree);
  return ShuffleElement(q, v.side.value_or(Side::Plus), v.hdeg, v.poly);
}

inline ShuffleElement parse_shuffle_expr(const Quiver& q, const std::string& text) {
  return eval_expr(q, *parse_expr_tree(q, text));
}

}  // namespace qshuffle
