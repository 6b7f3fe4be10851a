#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "convolutive/eta.hpp"
#include "convolutive/series.hpp"

namespace convolutive {

/// q -> q^k. The result has order order(a) * k, capped at max_order.
inline TruncatedSeries substitute_power(const TruncatedSeries& a, std::size_t k,
                                        std::optional<std::size_t> max_order = std::nullopt) {
  if (k == 0) throw std::invalid_argument("substitution power must be positive");
  std::size_t order = a.order() * k;
  if (max_order) order = std::min(order, *max_order);
  std::vector<BigInt> c(order + 1);
  for (std::size_t n = 0; n * k <= order; ++n) c[n * k] = a[n];
  return TruncatedSeries(std::move(c));
}

/// q -> -q.
inline TruncatedSeries negate_q(const TruncatedSeries& a) { return dual(a); }

/// prod_{k>=0} (1 + q^{m^k})^{m^k} to the given order.
inline TruncatedSeries mary_product(unsigned m, std::size_t order) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  TruncatedSeries result = TruncatedSeries::one(order);
  for (std::size_t power = 1; power <= order; power *= m) {
    std::vector<BigInt> binomial(order + 1);
    binomial[0] = 1;
    binomial[power] = 1;
    result = mul(pow(TruncatedSeries(std::move(binomial)), static_cast<unsigned>(power)), result);
  }
  return result;
}

/// Symbolic q-series built from eta-quotients; evaluated to any order.
///
/// Nodes are shared and immutable. Substitution and Huffing request the
/// child at the order they need, so an expression always evaluates to exactly
/// the requested order.
class Expr {
 public:
  static Expr eta(EtaProductSpec spec);
  static Expr constant(BigInt c) { return monomial(std::move(c), 0); }
  static Expr monomial(BigInt c, std::size_t power);
  static Expr q() { return monomial(1, 1); }
  static Expr mary(unsigned m);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b) { return a + Expr::constant(-1) * b; }
  friend Expr operator*(long c, const Expr& b) { return Expr::constant(c) * b; }
  friend Expr operator/(const Expr& a, const Expr& b) { return a * b.pow(-1); }

  Expr pow(int e) const;
  Expr subst(std::size_t k) const;
  Expr negate_q() const;
  Expr huff(std::size_t m) const;

  TruncatedSeries evaluate(std::size_t order) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  template <class T>
  static Expr make(T t);

  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  struct Eta { EtaProductSpec spec; };
  struct Monomial { BigInt c; std::size_t power; };
  struct Mary { unsigned m; };
  struct Sum { Expr a, b; };
  struct Product { Expr a, b; };
  struct Power { Expr a; int e; };
  struct Subst { Expr a; std::size_t k; };
  struct NegateQ { Expr a; };
  struct Huff { Expr a; std::size_t m; };

  std::variant<Eta, Monomial, Mary, Sum, Product, Power, Subst, NegateQ, Huff> v;

  static TruncatedSeries eval(const Eta& n, std::size_t order) { return eta_product_expand(n.spec, order); }
  static TruncatedSeries eval(const Monomial& n, std::size_t order) {
    return TruncatedSeries::monomial(n.c, n.power, order);
  }
  static TruncatedSeries eval(const Mary& n, std::size_t order) { return mary_product(n.m, order); }
  static TruncatedSeries eval(const Sum& n, std::size_t order) {
    return add(n.a.evaluate(order), n.b.evaluate(order));
  }
  static TruncatedSeries eval(const Product& n, std::size_t order) {
    return mul(n.a.evaluate(order), n.b.evaluate(order));
  }
  static TruncatedSeries eval(const Power& n, std::size_t order) {
    const TruncatedSeries base = n.a.evaluate(order);
    if (n.e >= 0) return convolutive::pow(base, static_cast<unsigned>(n.e));
    return inverse(convolutive::pow(base, static_cast<unsigned>(-n.e)));
  }
  static TruncatedSeries eval(const Subst& n, std::size_t order) {
    return substitute_power(n.a.evaluate((order + n.k - 1) / n.k), n.k, order);
  }
  static TruncatedSeries eval(const NegateQ& n, std::size_t order) {
    return convolutive::negate_q(n.a.evaluate(order));
  }
  static TruncatedSeries eval(const Huff& n, std::size_t order) {
    return convolutive::huff(n.a.evaluate(order * n.m), n.m);
  }
};

template <class T>
Expr Expr::make(T t) {
  return Expr(std::make_shared<const Node>(Node{std::move(t)}));
}

inline Expr Expr::eta(EtaProductSpec spec) { return make(Node::Eta{std::move(spec)}); }
inline Expr Expr::monomial(BigInt c, std::size_t power) { return make(Node::Monomial{std::move(c), power}); }
inline Expr Expr::mary(unsigned m) { return make(Node::Mary{m}); }
inline Expr operator+(const Expr& a, const Expr& b) { return Expr::make(Expr::Node::Sum{a, b}); }
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::make(Expr::Node::Product{a, b}); }
inline Expr Expr::pow(int e) const { return make(Node::Power{*this, e}); }
inline Expr Expr::subst(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("substitution power must be positive");
  return make(Node::Subst{*this, k});
}
inline Expr Expr::negate_q() const { return make(Node::NegateQ{*this}); }
inline Expr Expr::huff(std::size_t m) const {
  if (m == 0) throw std::invalid_argument("huff modulus must be positive");
  return make(Node::Huff{*this, m});
}

inline TruncatedSeries Expr::evaluate(std::size_t order) const {
  return std::visit([order](const auto& n) { return Node::eval(n, order); }, node_->v);
}

// --- theta functions and w(q) as eta-quotients ------------------------------

inline Expr phi_neg_expr() { return Expr::eta({{1, 2}, {2, -1}}); }       // phi(-q) = f1^2/f2
inline Expr psi_expr() { return Expr::eta({{1, -1}, {2, 2}}); }           // psi(q) = f2^2/f1
inline Expr psi_neg_expr() { return Expr::eta({{1, 1}, {2, -1}, {4, 1}}); } // psi(-q) = f1 f4/f2
inline Expr w_expr() { return Expr::eta({{1, 1}, {2, -1}, {3, -3}, {6, 3}}); } // f1 f6^3/(f2 f3^3)

inline TruncatedSeries theta_phi_neg(std::size_t order) { return phi_neg_expr().evaluate(order); }
inline TruncatedSeries theta_psi(std::size_t order) { return psi_expr().evaluate(order); }
inline TruncatedSeries theta_psi_neg(std::size_t order) { return psi_neg_expr().evaluate(order); }
inline TruncatedSeries w_series(std::size_t order) { return w_expr().evaluate(order); }

// --- identity catalog ---------------------------------------------------------

struct IdentityRecord {
  std::string id;
  std::string description;
  Expr lhs;
  Expr rhs;
};

struct IdentityResult {
  std::string id;
  std::size_t order = 0;
  bool holds = false;
  std::optional<std::size_t> first_failure;
};

/// Seven eta-products with their convolutivity modulus, in table order.
struct ConvolutiveEtaProduct {
  int a_number;
  EtaProductSpec spec;
  unsigned m;
};

inline const std::vector<ConvolutiveEtaProduct>& known_convolutive_products() {
  static const std::vector<ConvolutiveEtaProduct> rows{
      {7096, {{1, -4}, {2, 6}, {4, -2}}, 2},
      {103258, {{1, -2}, {2, 1}, {4, 2}, {8, -1}}, 2},
      {102186, {{1, -1}, {3, -1}, {4, 1}, {6, 2}, {12, -1}}, 2},
      {94023, {{1, -1}, {6, 1}, {10, 1}, {15, -1}}, 2},
      {128128, {{1, -3}, {2, 3}, {3, 1}, {6, -1}}, 2},
      {98151, {{1, -2}, {2, 1}, {3, 2}, {6, -1}}, 3},
      {385520, {{1, -1}, {2, 1}, {3, -1}, {4, -1}, {6, 3}, {12, -1}}, 3},
  };
  return rows;
}

inline std::string a_number_string(int a) {
  std::string digits = std::to_string(a);
  return "A" + std::string(digits.size() < 6 ? 6 - digits.size() : 0, '0') + digits;
}

inline const std::vector<IdentityRecord>& identity_catalog() {
  static const std::vector<IdentityRecord> catalog = [] {
    const Expr q = Expr::q();
    auto eta = [](std::initializer_list<std::pair<const int, int>> f) { return Expr::eta(EtaProductSpec(f)); };
    std::vector<IdentityRecord> c;

    c.push_back({"eq:f1-2", "1/f1^2 = f8^5/(f2^5 f16^2) + 2q f4^2 f16^2/(f2^5 f8)", eta({{1, -2}}),
                 eta({{2, -5}, {8, 5}, {16, -2}}) + 2 * q * eta({{2, -5}, {4, 2}, {8, -1}, {16, 2}})});
    c.push_back({"eq:f1-4", "1/f1^4 = f4^14/(f2^14 f8^4) + 4q f4^2 f8^4/f2^10", eta({{1, -4}}),
                 eta({{2, -14}, {4, 14}, {8, -4}}) + 4 * q * eta({{2, -10}, {4, 2}, {8, 4}})});
    c.push_back({"eq:f1f3", "f3/f1^3 = f4^6 f6^3/(f2^9 f12^2) + 3q f4^2 f6 f12^2/f2^7", eta({{1, -3}, {3, 1}}),
                 eta({{2, -9}, {4, 6}, {6, 3}, {12, -2}}) + 3 * q * eta({{2, -7}, {4, 2}, {6, 1}, {12, 2}})});
    c.push_back({"eq:f1f3inv",
                 "1/(f1 f3) = f8^2 f12^5/(f2^2 f4 f6^4 f24^2) + q f4^5 f24^2/(f2^4 f6^2 f8^2 f12)",
                 eta({{1, -1}, {3, -1}}),
                 eta({{2, -2}, {4, -1}, {6, -4}, {8, 2}, {12, 5}, {24, -2}}) +
                     q * eta({{2, -4}, {4, 5}, {6, -2}, {8, -2}, {12, -1}, {24, 2}})});
    c.push_back({"eq:H-f1f15", "H2(1/(f1 f15)) = f6^2 f10^2/(f1^2 f3 f5 f15^2)", eta({{1, -1}, {15, -1}}).huff(2),
                 eta({{1, -2}, {3, -1}, {5, -1}, {6, 2}, {10, 2}, {15, -2}})});
    c.push_back({"eq:psi-15", "psi(q) psi(q^15) + psi(-q) psi(-q^15) = 2 f12^2 f20^2/(f6 f10)",
                 psi_expr() * psi_expr().subst(15) + psi_neg_expr() * psi_expr().negate_q().subst(15),
                 2 * eta({{6, -1}, {10, -1}, {12, 2}, {20, 2}})});
    c.push_back({"eq:1/-phi--3dis", "1/phi(-q) = phi(-q^9)^3/phi(-q^3)^4 (1 + 2q w(q^3) + 4q^2 w(q^3)^2)",
                 phi_neg_expr().pow(-1),
                 phi_neg_expr().subst(9).pow(3) * phi_neg_expr().subst(3).pow(-4) *
                     (Expr::constant(1) + 2 * q * w_expr().subst(3) +
                      4 * Expr::monomial(1, 2) * w_expr().subst(3).pow(2))});
    c.push_back({"eq:1/psi--3dis", "1/psi(-q) = psi(-q^9)^3/psi(-q^3)^4 (1/w(-q^3)^2 + q/w(-q^3) + q^2)",
                 psi_neg_expr().pow(-1),
                 psi_neg_expr().subst(9).pow(3) * psi_neg_expr().subst(3).pow(-4) *
                     (w_expr().negate_q().subst(3).pow(-2) + q * w_expr().negate_q().subst(3).pow(-1) +
                      Expr::monomial(1, 2))});
    c.push_back({"eq:w-neg", "w(-q) = f2^2 f3^3 f12^3/(f1 f4 f6^6)", w_expr().negate_q(),
                 eta({{1, -1}, {2, 2}, {3, 3}, {4, -1}, {6, -6}, {12, 3}})});
    c.push_back({"eq:f1-neg", "(-q;-q)_inf = f2^3/(f1 f4)", eta({{1, 1}}).negate_q(),
                 eta({{1, -1}, {2, 3}, {4, -1}})});

    for (const auto& row : known_convolutive_products()) {
      const Expr gf = Expr::eta(row.spec);
      const std::string name = a_number_string(row.a_number);
      const std::string m = std::to_string(row.m);
      c.push_back({"thm-" + name, "H" + m + "(gf) = gf^" + m + " for " + name + " = P_{" + row.spec.to_string() + "}",
                   gf.huff(row.m), gf.pow(static_cast<int>(row.m))});
    }
    // Sign-alternated companions of the two 3-convolutive products.
    for (const auto& [dual_name, a] : {std::pair{"A132002", 98151}, std::pair{"A293306", 385520}}) {
      for (const auto& row : known_convolutive_products()) {
        if (row.a_number != a) continue;
        const Expr gf = Expr::eta(row.spec).negate_q();
        c.push_back({std::string("thm-") + dual_name, "H3(gf(-q)) = gf(-q)^3, dual of " + a_number_string(a),
                     gf.huff(3), gf.pow(3)});
      }
    }
    for (unsigned m : {2U, 3U}) {
      const std::string id = m == 2 ? "eq:A073707" : "eq:Am-3";
      c.push_back({id, "A_m(q) = A_m(q^m)^m + q A_m(q^m)^m, m = " + std::to_string(m), Expr::mary(m),
                   (Expr::constant(1) + q) * Expr::mary(m).subst(m).pow(static_cast<int>(m))});
    }
    return c;
  }();
  return catalog;
}

/// Compares both sides coefficient-wise up to the given order.
inline IdentityResult verify_expressions(const std::string& id, const Expr& lhs, const Expr& rhs,
                                         std::size_t order) {
  IdentityResult r;
  r.id = id;
  r.order = order;
  const TruncatedSeries a = lhs.evaluate(order);
  const TruncatedSeries b = rhs.evaluate(order);
  for (std::size_t n = 0; n <= order; ++n) {
    if (a[n] != b[n]) {
      r.first_failure = n;
      return r;
    }
  }
  r.holds = true;
  return r;
}

inline const IdentityRecord& find_identity(const std::string& id) {
  for (const auto& rec : identity_catalog()) {
    if (rec.id == id) return rec;
  }
  throw std::invalid_argument("unknown identity '" + id + "'");
}

inline IdentityResult verify_identity(const std::string& id, std::size_t order) {
  if (order < 4) throw std::invalid_argument("verification order must be at least 4");
  const IdentityRecord& rec = find_identity(id);
  return verify_expressions(rec.id, rec.lhs, rec.rhs, order);
}

}  // namespace convolutive
