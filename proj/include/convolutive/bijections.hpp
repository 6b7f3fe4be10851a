#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "convolutive/partitions.hpp"

namespace convolutive {

// --- part-level helpers ---------------------------------------------------

/// Multiset union.
inline Partition merge(const Partition& a, const Partition& b) {
  std::vector<Part> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return Partition(std::move(parts));
}

/// (odd parts, even parts).
inline std::pair<Partition, Partition> split_by_parity(const Partition& pi) {
  std::vector<int> odd, even;
  for (const auto& p : pi.parts()) (p.size % 2 ? odd : even).push_back(p.size);
  return {Partition(odd), Partition(even)};
}

inline Partition scale_parts(const Partition& pi, int c) {
  std::vector<int> parts = pi.sizes();
  for (int& p : parts) p *= c;
  return Partition(parts);
}

/// Divides every part by c; every part must be a multiple of c.
inline Partition divide_parts(const Partition& pi, int c) {
  std::vector<int> parts = pi.sizes();
  for (int& p : parts) {
    if (p % c != 0) throw std::domain_error("part " + std::to_string(p) + " not divisible by " + std::to_string(c));
    p /= c;
  }
  return Partition(parts);
}

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

inline void require_member(const Partition& pi, const SetSpec& spec) {
  require(membership(pi, spec), pi.to_string() + " is not in " + spec.name());
}

}  // namespace detail

// --- Glaisher ----------------------------------------------------------------

/// No part divisible by d  ->  every multiplicity at most d-1. Writing the
/// multiplicity of k in base d as sum r_i d^i, the copies of k become r_i
/// copies of k d^i.
inline Partition glaisher_forward(const Partition& pi, int d) {
  if (d < 2) throw std::invalid_argument("glaisher needs d >= 2");
  detail::require(!pi.is_colored(), "glaisher acts on uncolored partitions");
  std::vector<int> out;
  for (const auto& [k, mult] : pi.multiplicities()) {
    if (k % d == 0) throw std::domain_error("part divisible by d");
    long size = k;
    for (int m = mult; m > 0; m /= d, size *= d) out.insert(out.end(), m % d, static_cast<int>(size));
  }
  return Partition(out);
}

inline Partition glaisher_inverse(const Partition& pi, int d) {
  if (d < 2) throw std::invalid_argument("glaisher needs d >= 2");
  detail::require(!pi.is_colored(), "glaisher acts on uncolored partitions");
  std::vector<int> out;
  for (const auto& [size, mult] : pi.multiplicities()) {
    if (mult >= d) throw std::domain_error("multiplicity at least d");
    int k = size;
    long copies = mult;
    while (k % d == 0) {
      k /= d;
      copies *= d;
    }
    out.insert(out.end(), copies, k);
  }
  return Partition(out);
}

// --- Jacobi triple product: D_o x D_o <-> S x P_e -----------------------------
//
// Realized through the charged Maya diagram. A strict odd part 2a+1 of mu
// puts a particle at site a >= 0; a part 2b+1 of nu removes the particle at
// site -(b+1) from the filled negative sea. The charge is s = l(mu) - l(nu).
// With occupied sites x_1 > x_2 > ..., kappa_i = x_i - (s - i) is a
// partition, and |mu| + |nu| = s^2 + 2|kappa|. lambda = 2 kappa.

struct TripleProductImage {
  long s = 0;
  Partition lambda;

  friend bool operator==(const TripleProductImage&, const TripleProductImage&) = default;
};

inline TripleProductImage triple_product_forward(const Partition& mu, const Partition& nu) {
  detail::require_member(mu, SetSpec::Do());
  detail::require_member(nu, SetSpec::Do());
  const long s = static_cast<long>(mu.length()) - static_cast<long>(nu.length());

  std::set<long> particles;
  for (const auto& p : mu.parts()) particles.insert((p.size - 1) / 2);
  std::set<long> holes;
  for (const auto& p : nu.parts()) holes.insert(-((p.size - 1) / 2) - 1);

  const long top = particles.empty() ? -1 : *particles.rbegin();
  const long bottom = (holes.empty() ? 0 : *holes.begin()) - 1;  // everything below is filled
  std::vector<int> kappa;
  long i = 0;
  long last = 0;
  for (long x = top; x >= bottom; --x) {
    if (x >= 0 ? !particles.count(x) : holes.count(x) > 0) continue;
    ++i;
    last = x - (s - i);
    if (last > 0) kappa.push_back(static_cast<int>(2 * last));
  }
  detail::require(last == 0, "Maya diagram has inconsistent charge");
  return {s, Partition(kappa)};
}

inline std::pair<Partition, Partition> triple_product_inverse(long s, const Partition& lambda) {
  detail::require_member(lambda, SetSpec::Pe());
  const Partition kappa = divide_parts(lambda, 2);
  const long len = static_cast<long>(kappa.length());
  const long sites = std::max(len, s + 1) + 1;  // x_sites < -1 and the tail below it is filled

  std::set<long> occupied;
  for (long i = 1; i <= sites; ++i) {
    const long k = i <= len ? kappa.parts()[i - 1].size : 0;
    occupied.insert(k + s - i);
  }
  const long floor_site = s - sites;
  std::vector<int> mu, nu;
  for (long x : occupied) {
    if (x >= 0) mu.push_back(static_cast<int>(2 * x + 1));
  }
  for (long y = floor_site + 1; y <= -1; ++y) {
    if (!occupied.count(y)) nu.push_back(static_cast<int>(-2 * y - 1));
  }
  return {Partition(mu), Partition(nu)};
}

// --- P3_o <-> D_o x D_{4,2} ----------------------------------------------------

/// Keeps one copy of each odd part with odd multiplicity; each pair of k's
/// becomes a single part 2k.
inline std::pair<Partition, Partition> split_p3o(const Partition& pi) {
  detail::require_member(pi, SetSpec::P3o());
  std::vector<int> alpha, beta;
  for (const auto& [k, mult] : pi.multiplicities()) {
    if (mult % 2) alpha.push_back(k);
    if (mult / 2) beta.push_back(2 * k);
  }
  return {Partition(alpha), Partition(beta)};
}

inline Partition merge_p3o(const Partition& alpha, const Partition& beta) {
  detail::require_member(alpha, SetSpec::Do());
  detail::require_member(beta, SetSpec::D(4, 2));
  std::vector<int> out = alpha.sizes();
  for (int b : beta.sizes()) out.insert(out.end(), 2, b / 2);
  return Partition(out);
}

// --- P <-> P3 x P_{4,0} ------------------------------------------------------

/// Multiples of 4 pass to the second component; the rest go through Glaisher
/// with d = 4.
inline std::pair<Partition, Partition> split_p(const Partition& pi) {
  detail::require_member(pi, SetSpec::P());
  std::vector<int> rest, fours;
  for (int p : pi.sizes()) (p % 4 ? rest : fours).push_back(p);
  return {glaisher_forward(Partition(rest), 4), Partition(fours)};
}

inline Partition merge_p(const Partition& alpha, const Partition& beta) {
  detail::require_member(alpha, SetSpec::P3());
  detail::require_member(beta, SetSpec::P(4, 0));
  return merge(glaisher_inverse(alpha, 4), beta);
}

// --- [S x S]_even <-> S x S ------------------------------------------------------

inline std::pair<long, long> sstt(long s1, long s2) {
  if ((s1 - s2) % 2 != 0) throw std::domain_error("odd combined weight");
  return {(s1 + s2) / 2, (s1 - s2) / 2};
}

inline std::pair<long, long> sstt_inverse(long t1, long t2) { return {t1 + t2, t1 - t2}; }

// --- composite weight-halving maps ------------------------------------------------

inline const std::vector<SetSpec>& a007096_domain() {
  static const std::vector<SetSpec> specs{SetSpec::Do(), SetSpec::Do(), SetSpec::D(), SetSpec::D()};
  return specs;
}

/// Components (a1, b1, a2, b2, g1, g2, d1, d2).
inline const std::vector<SetSpec>& a007096_codomain() {
  static const std::vector<SetSpec> specs{SetSpec::Do(), SetSpec::Do(), SetSpec::Do(), SetSpec::Do(),
                                          SetSpec::D(),  SetSpec::D(),  SetSpec::D(),  SetSpec::D()};
  return specs;
}

/// [D_o x D_o x D x D]_even -> D_o^4 x D^4, halving the weight.
///
/// Stages: parity split of both D components; triple product on (mu1, mu2)
/// and on the two odd halves; sstt on the two charges; halve every even
/// part; parity split of the two halved P_e components; triple product
/// backwards on (t_i, even half); Glaisher d = 2 on the odd halves.
inline PartitionTuple a007096_halving(const PartitionTuple& t) {
  detail::require(membership(t, a007096_domain(), 2), "tuple outside [D_o x D_o x D x D]_even");
  const auto [d1_odd, d1_even] = split_by_parity(t.partition(2));
  const auto [d2_odd, d2_even] = split_by_parity(t.partition(3));
  const auto first = triple_product_forward(t.partition(0), t.partition(1));
  const auto second = triple_product_forward(d1_odd, d2_odd);
  const auto [t1, t2] = sstt(first.s, second.s);
  const auto [p1_odd, p1_even] = split_by_parity(divide_parts(first.lambda, 2));
  const auto [p2_odd, p2_even] = split_by_parity(divide_parts(second.lambda, 2));
  const auto [a1, b1] = triple_product_inverse(t1, p1_even);
  const auto [a2, b2] = triple_product_inverse(t2, p2_even);
  return make_tuple_of({a1, b1, a2, b2, glaisher_forward(p1_odd, 2), glaisher_forward(p2_odd, 2),
                        divide_parts(d1_even, 2), divide_parts(d2_even, 2)});
}

inline PartitionTuple a007096_restore(const PartitionTuple& u) {
  detail::require(membership(u, a007096_codomain()), "tuple outside D_o^4 x D^4");
  const auto first = triple_product_forward(u.partition(0), u.partition(1));
  const auto second = triple_product_forward(u.partition(2), u.partition(3));
  const Partition lambda1 = scale_parts(merge(first.lambda, glaisher_inverse(u.partition(4), 2)), 2);
  const Partition lambda2 = scale_parts(merge(second.lambda, glaisher_inverse(u.partition(5), 2)), 2);
  const auto [s1, s2] = sstt_inverse(first.s, second.s);
  const auto [mu1, mu2] = triple_product_inverse(s1, lambda1);
  const auto [d1_odd, d2_odd] = triple_product_inverse(s2, lambda2);
  return make_tuple_of({mu1, mu2, merge(d1_odd, scale_parts(u.partition(6), 2)),
                        merge(d2_odd, scale_parts(u.partition(7), 2))});
}

inline const std::vector<SetSpec>& a103258_domain() {
  static const std::vector<SetSpec> specs{SetSpec::P3o(), SetSpec::P3()};
  return specs;
}

inline const std::vector<SetSpec>& a103258_codomain() {
  static const std::vector<SetSpec> specs{SetSpec::P3o(), SetSpec::P3o(), SetSpec::P3(), SetSpec::P3()};
  return specs;
}

/// [P3_o x P3]_even -> P3_o^2 x P3^2, halving the weight.
///
/// Stages: parity split of the P3 component; split_p3o on both odd parts;
/// triple product on the two D_o halves (the charge is then even); halve
/// every part and the charge; split_p on the halved P_e component; triple
/// product backwards on (charge/2, P_{4,0}/2); double those back into
/// D_{4,2} and recombine with merge_p3o.
inline PartitionTuple a103258_halving(const PartitionTuple& t) {
  detail::require(membership(t, a103258_domain(), 2), "tuple outside [P3_o x P3]_even");
  const auto [p2_odd, p2_even] = split_by_parity(t.partition(1));
  const auto [alpha1, beta1] = split_p3o(t.partition(0));
  const auto [alpha2, beta2] = split_p3o(p2_odd);
  const auto image = triple_product_forward(alpha1, alpha2);
  detail::require(image.s % 2 == 0, "even total weight forces an even charge");
  const auto [gamma, rho] = split_p(divide_parts(image.lambda, 2));
  const auto [mu, nu] = triple_product_inverse(image.s / 2, divide_parts(rho, 2));
  return make_tuple_of({merge_p3o(divide_parts(beta1, 2), scale_parts(mu, 2)),
                        merge_p3o(divide_parts(beta2, 2), scale_parts(nu, 2)), gamma,
                        divide_parts(p2_even, 2)});
}

inline PartitionTuple a103258_restore(const PartitionTuple& u) {
  detail::require(membership(u, a103258_codomain()), "tuple outside P3_o^2 x P3^2");
  const auto [beta1_half, mu2] = split_p3o(u.partition(0));
  const auto [beta2_half, nu2] = split_p3o(u.partition(1));
  const auto image = triple_product_forward(divide_parts(mu2, 2), divide_parts(nu2, 2));
  const Partition lambda = scale_parts(merge_p(u.partition(2), scale_parts(image.lambda, 2)), 2);
  const auto [alpha1, alpha2] = triple_product_inverse(2 * image.s, lambda);
  const Partition p1 = merge_p3o(alpha1, scale_parts(beta1_half, 2));
  const Partition p2_odd = merge_p3o(alpha2, scale_parts(beta2_half, 2));
  return make_tuple_of({p1, merge(p2_odd, scale_parts(u.partition(3), 2))});
}

// --- colored m-ary strict partitions: [A_m]_m <-> A_m^m ---------------------------------

/// A part m^k with color c = m(c' - 1) + r, 1 <= r <= m, goes to slot r
/// (1-based) as the part m^{k-1} with color c'.
inline PartitionTuple mary_split(const Partition& pi, int m) {
  detail::require(is_colored_mary_strict(pi, m), pi.to_string() + " is not a colored m-ary strict partition");
  detail::require(pi.weight() % m == 0, "weight not divisible by m");
  std::vector<std::vector<Part>> slots(m);
  for (const auto& p : pi.parts()) {
    const int r = (p.color - 1) % m + 1;
    const int c_prime = (p.color - 1) / m + 1;
    slots[r - 1].push_back(Part{p.size / m, c_prime});
  }
  PartitionTuple out;
  for (auto& s : slots) out.entries.emplace_back(Partition::colored(std::move(s)));
  return out;
}

inline Partition mary_merge(const PartitionTuple& t, int m) {
  detail::require(t.size() == static_cast<std::size_t>(m), "tuple must have m components");
  std::vector<Part> parts;
  for (int r = 1; r <= m; ++r) {
    const Partition& lam = t.partition(r - 1);
    detail::require(is_colored_mary_strict(lam, m), lam.to_string() + " is not a colored m-ary strict partition");
    for (const auto& p : lam.parts()) parts.push_back(Part{p.size * m, m * (p.color - 1) + r});
  }
  return Partition::colored(std::move(parts));
}

}  // namespace convolutive
