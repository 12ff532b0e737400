#pragma once

// Closed 1-cochains: periods, cyclic covers from integer periods, exact
// approximations on those covers, and the 1-form Morse inequality checks.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "eqhodge/complex.hpp"
#include "eqhodge/cover.hpp"
#include "eqhodge/delocalized.hpp"
#include "eqhodge/error.hpp"
#include "eqhodge/exact.hpp"
#include "eqhodge/hodge.hpp"
#include "eqhodge/morse.hpp"

namespace eqhodge {

/// Real 1-cochain indexed like the edges of its complex; the value is for
/// the edge oriented from lower to higher vertex.
class ClosedOneCochain {
 public:
  ClosedOneCochain() = default;

  /// Edges not listed get 0. An entry (u,v,x) with u > v stores -x on [v,u].
  ClosedOneCochain(const SimplicialComplex& K, const std::vector<std::tuple<int, int, double>>& entries) : values_(K.count(1), 0.0) {
    for (const auto& [u, v, x] : entries) {
      const auto idx = K.index_of(u < v ? Simplex{u, v} : Simplex{v, u});
      if (!idx) throw Error("oneform", "ClosedOneCochain", "edge [" + std::to_string(u) + "," + std::to_string(v) + "] not in complex");
      values_[*idx] = u < v ? x : -x;
    }
    check_closed(K);
  }

  ClosedOneCochain(const SimplicialComplex& K, std::vector<double> per_edge) : values_(std::move(per_edge)) {
    if (values_.size() != K.count(1)) throw Error("oneform", "ClosedOneCochain", "one value per edge expected");
    check_closed(K);
  }

  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t edge) const { return values_[edge]; }

  /// ω(u → v), antisymmetric.
  double along(const SimplicialComplex& K, int u, int v) const {
    const double x = values_[*K.index_of(u < v ? Simplex{u, v} : Simplex{v, u})];
    return u < v ? x : -x;
  }

  bool integer_valued() const {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return x == std::round(x); });
  }

 private:
  void check_closed(const SimplicialComplex& K) const {
    if (K.dimension() < 2) return;
    const double tol = integer_valued() ? 0.0 : 1e-12;
    for (const auto& t : K.simplices(2)) {
      const double d = values_[*K.index_of({t[0], t[1]})] + values_[*K.index_of({t[1], t[2]})] - values_[*K.index_of({t[0], t[2]})];
      if (std::abs(d) > tol)
        throw Error("oneform", "periods", "cochain is not closed on triangle [" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "]");
    }
  }

  std::vector<double> values_;
};

/// Breadth-first spanning forest of the 1-skeleton. Each component is
/// rooted at its lowest vertex; neighbours are visited in ascending order.
struct SpanningForest {
  std::vector<int> parent;       // -1 at roots
  std::vector<int> order;        // visiting order
  std::vector<bool> tree_edge;   // per edge index
};

inline SpanningForest spanning_forest(const SimplicialComplex& K) {
  const std::size_t nv = K.vertex_count();
  std::vector<std::vector<int>> adj(nv);
  for (const auto& e : K.simplices(1)) {
    adj[static_cast<std::size_t>(e[0])].push_back(e[1]);
    adj[static_cast<std::size_t>(e[1])].push_back(e[0]);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  SpanningForest F;
  F.parent.assign(nv, -1);
  F.tree_edge.assign(K.count(1), false);
  std::vector<bool> seen(nv, false);
  for (std::size_t root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<int> q;
    q.push(static_cast<int>(root));
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      F.order.push_back(u);
      for (int w : adj[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = true;
        F.parent[static_cast<std::size_t>(w)] = u;
        F.tree_edge[*K.index_of(u < w ? Simplex{u, w} : Simplex{w, u})] = true;
        q.push(w);
      }
    }
  }
  return F;
}

/// Integral of ω along forest paths from each root (root value 0).
inline std::vector<double> integrate_along_forest(const SimplicialComplex& K, const SpanningForest& F, const std::vector<double>& per_edge) {
  std::vector<double> f(K.vertex_count(), 0.0);
  for (int v : F.order) {
    const int p = F.parent[static_cast<std::size_t>(v)];
    if (p < 0) continue;
    const double x = per_edge[*K.index_of(p < v ? Simplex{p, v} : Simplex{v, p})];
    f[static_cast<std::size_t>(v)] = f[static_cast<std::size_t>(p)] + (p < v ? x : -x);
  }
  return f;
}

struct PeriodData {
  std::vector<std::vector<long long>> cycles;  // integer 1-chains over edges, a basis of H_1
  std::vector<double> periods;
  bool integer_valued = false;
  long long generator = 0;  // gcd of the integer periods; 0 when all vanish
  bool exact() const {
    return std::all_of(periods.begin(), periods.end(), [](double p) { return std::abs(p) <= 1e-12; });
  }
};

/// ω evaluated on a 1-chain.
inline double evaluate_on_chain(const ClosedOneCochain& omega, const std::vector<long long>& chain) {
  double s = 0.0;
  for (std::size_t i = 0; i < chain.size(); ++i) s += static_cast<double>(chain[i]) * omega[i];
  return s;
}

/// 1-chain of the closed vertex walk v0 -> v1 -> ... -> v0.
inline std::vector<long long> loop_chain(const SimplicialComplex& K, const std::vector<int>& walk) {
  std::vector<long long> chain(K.count(1), 0);
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const int a = walk[i], b = walk[(i + 1) % walk.size()];
    const auto idx = K.index_of(a < b ? Simplex{a, b} : Simplex{b, a});
    if (!idx) throw Error("oneform", "loop_chain", "walk uses a non-edge");
    chain[*idx] += a < b ? 1 : -1;
  }
  return chain;
}

/// Periods of ω on a homology basis made of fundamental cycles of the BFS
/// spanning forest, reduced modulo boundaries by exact row reduction.
inline PeriodData periods(const SimplicialComplex& K, const ClosedOneCochain& omega) {
  const SpanningForest F = spanning_forest(K);
  std::vector<std::vector<long long>> fundamental;
  for (std::size_t e = 0; e < K.count(1); ++e) {
    if (F.tree_edge[e]) continue;
    const int u = K.simplex(1, e)[0], v = K.simplex(1, e)[1];
    // u -> v along the edge, then back to u through the forest.
    std::vector<long long> chain(K.count(1), 0);
    chain[e] = 1;
    auto path_to_root = [&](int x) {
      std::vector<int> p{x};
      while (F.parent[static_cast<std::size_t>(p.back())] >= 0) p.push_back(F.parent[static_cast<std::size_t>(p.back())]);
      return p;
    };
    auto add_step = [&](int a, int b, long long sgn) {
      chain[*K.index_of(a < b ? Simplex{a, b} : Simplex{b, a})] += (a < b ? 1 : -1) * sgn;
    };
    const auto pv = path_to_root(v), pu = path_to_root(u);
    for (std::size_t i = 0; i + 1 < pv.size(); ++i) add_step(pv[i], pv[i + 1], 1);
    for (std::size_t i = 0; i + 1 < pu.size(); ++i) add_step(pu[i], pu[i + 1], -1);
    fundamental.push_back(std::move(chain));
  }

  const IntMatrix d2 = detail::boundary_any(K, 2);
  const std::size_t ne = K.count(1), nb = static_cast<std::size_t>(d2.cols());
  RationalMatrix m(ne, nb + fundamental.size());
  for (std::size_t i = 0; i < ne; ++i) {
    for (std::size_t j = 0; j < nb; ++j)
      if (d2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0) m(i, j) = static_cast<long>(d2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    for (std::size_t j = 0; j < fundamental.size(); ++j) m(i, nb + j) = static_cast<long>(fundamental[j][i]);
  }
  PeriodData out;
  for (auto p : rref_in_place(m))
    if (p >= nb) out.cycles.push_back(fundamental[p - nb]);
  out.integer_valued = true;
  for (const auto& z : out.cycles) {
    const double p = evaluate_on_chain(omega, z);
    out.periods.push_back(p);
    if (p != std::round(p)) out.integer_valued = false;
  }
  if (out.integer_valued)
    for (double p : out.periods) out.generator = std::gcd(out.generator, static_cast<long long>(std::llabs(static_cast<long long>(p))));
  return out;
}

/// Z/m cover with voltage α(u,v) = ω(u,v) mod m.
inline CoverComplex cyclic_cover(const SimplicialComplex& K, const ClosedOneCochain& omega, int m) {
  if (m < 1) throw Error("oneform", "cyclic_cover", "m must be positive");
  if (!omega.integer_valued()) throw Error("oneform", "cyclic_cover", "cochain is not integer-valued");
  VoltageAssignment alpha;
  for (std::size_t e = 0; e < K.count(1); ++e) {
    const long long x = static_cast<long long>(omega[e]);
    const int g = static_cast<int>(((x % m) + m) % m);
    if (g != 0) alpha.set(K.simplex(1, e)[0], K.simplex(1, e)[1], g);
  }
  return build_cover(K, cyclic_group(m), alpha);
}

/// Pullback of a base 1-cochain to the total complex.
inline std::vector<double> lift_cochain(const CoverComplex& C, const ClosedOneCochain& omega) {
  std::vector<double> out(C.total().count(1));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = omega[C.project(1, i)];
  return out;
}

/// Potential ψ minimizing ‖dψ − ω‖ (zero mean on each component), rounded
/// to a 1e-9 grid. ω − dψ is the harmonic representative of ω.
inline std::vector<double> coexact_potential(const SimplicialComplex& K, const ClosedOneCochain& omega) {
  const Eigen::MatrixXd d0 = coboundary(K, 0);
  Eigen::VectorXd w(static_cast<Eigen::Index>(omega.values().size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = omega[static_cast<std::size_t>(i)];
  const SpectralPackage s = spectrum(d0.transpose() * d0, 0);
  const Eigen::VectorXd rhs = d0.transpose() * w;
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(K.vertex_count()));
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues(i) < s.zero_threshold) continue;
    psi += s.eigenvectors.col(i) * (s.eigenvectors.col(i).dot(rhs) / s.eigenvalues(i));
  }
  std::vector<double> out(K.vertex_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = std::round(psi(static_cast<Eigen::Index>(v)) * 1e9) / 1e9;
  return out;
}

struct ExactApproximation {
  std::vector<double> primitive;     // forest integral of ω_m, roots at 0
  std::vector<double> perturbation;  // tie-break direction, scaled by epsilon
  double epsilon = 0.0;
  std::vector<double> values;        // primitive + epsilon·perturbation
  MorseMatching matching;
  std::vector<std::size_t> counts;
  std::optional<std::vector<long long>> defect;  // counts − |G|·reference
  SpanningForest forest;
};

/// Exact Morse approximation of the lifted cochain on a cyclic cover.
///
/// The forest integral f of ω_m is perturbed by ε·(−ψ̃), with ψ̃ the lift of
/// the base potential from coexact_potential and ε = 1e-6·(1 + max|f|).
/// Along edges where ω vanishes this breaks ties in the direction of the
/// harmonic representative of ω, which keeps the critical count per sheet
/// bounded; remaining exact ties are broken by vertex index.
inline ExactApproximation exact_approximation(const CoverComplex& Cm, const ClosedOneCochain& omega,
                                              const std::optional<std::vector<std::size_t>>& reference_counts = std::nullopt) {
  if (!omega.integer_valued()) throw Error("oneform", "exact_approximation", "cochain is not integer-valued");
  const SimplicialComplex& T = Cm.total();
  ExactApproximation out;
  out.forest = spanning_forest(T);
  out.primitive = integrate_along_forest(T, out.forest, lift_cochain(Cm, omega));
  double max_f = 0.0;
  for (double x : out.primitive) max_f = std::max(max_f, std::abs(x));
  out.epsilon = 1e-6 * (1.0 + max_f);
  const auto psi = coexact_potential(Cm.base(), omega);
  out.perturbation.resize(T.vertex_count());
  out.values.resize(T.vertex_count());
  const auto m = static_cast<std::size_t>(Cm.order());
  for (std::size_t v = 0; v < T.vertex_count(); ++v) {
    out.perturbation[v] = -psi[v / m];
    out.values[v] = out.primitive[v] + out.epsilon * out.perturbation[v];
  }
  out.matching = matching_from_vertex_function(T, out.values);
  out.counts = require_valid_matching(T, out.matching, "exact_approximation");
  if (reference_counts) {
    if (reference_counts->size() != out.counts.size()) throw Error("oneform", "exact_approximation", "reference counts have the wrong length");
    std::vector<long long> d(out.counts.size());
    for (std::size_t k = 0; k < d.size(); ++k)
      d[k] = static_cast<long long>(out.counts[k]) - static_cast<long long>(m * (*reference_counts)[k]);
    out.defect = std::move(d);
  }
  return out;
}

/// Critical counts of the same construction on the base itself (one sheet);
/// for exact ω this is the lower-star matching of its primitive.
inline std::vector<std::size_t> base_reference_counts(const SimplicialComplex& K, const ClosedOneCochain& omega) {
  return exact_approximation(trivial_cover(K), omega).counts;
}

struct DelahgarRow {
  int m = 0;
  int k = 0;
  int class_rep = 0;
  std::size_t count = 0;  // C_k(m) on M_m
  double beta_e = 0.0;
  double beta_g = 0.0;
  double gamma = 0.0;
  double lhs = 0.0;  // (1/m) Σ (-1)^{k-j} C_j(m)
  double rhs = 0.0;  // Σ (-1)^{k-j} γ_j − slack(m)
  double slack = 0.0;
  bool pass = false;
};

struct DelahgarReport {
  std::vector<DelahgarRow> rows;           // ascending m, then k
  std::vector<std::size_t> reference;      // base reference counts
  std::vector<int> m_values;
  std::vector<long long> max_defect;       // per m: max_k (C_k(m) − m·reference_k)
  long long defect_bound = 0;              // Ĉ = max over m, clamped at 0
  double slack_exponent = 0.0;             // fitted d log slack / d log m (expect −1)
  bool exact_form = false;
  double tolerance = 1e-8;
  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const DelahgarRow& r) { return r.pass; });
  }
};

/// Least-squares slope of log(y) against log(x) over points with y > 0.
inline std::optional<double> log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (y[i] > 1e-12) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  if (lx.size() < 2) return std::nullopt;
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

/// For each m: (1/m) Σ_{j<=k} (-1)^{k-j} C_j(m) >= Σ_{j<=k} (-1)^{k-j} γ_j(m) − (k+1)Ĉ/m − tol,
/// with equality within tol at k = n. γ is taken for the class of the
/// element `power` of Z/m on the cover M_m; Ĉ is the largest measured defect
/// C_k(m) − m·reference_k over the m-list.
///
/// `reference` defaults to the base construction's counts when ω is exact
/// and to zero otherwise (a cochain with nonzero periods has no discrete
/// critical cells to compare against).
inline DelahgarReport verify_delahgar(const SimplicialComplex& K, const ClosedOneCochain& omega, int power, const std::vector<int>& m_list,
                                      std::optional<std::vector<std::size_t>> reference = std::nullopt, double tol = 1e-8) {
  if (!omega.integer_valued()) throw Error("oneform", "verify_delahgar", "cochain is not integer-valued");
  if (m_list.empty()) throw Error("oneform", "verify_delahgar", "m-list is empty");
  DelahgarReport rep;
  rep.tolerance = tol;
  rep.exact_form = periods(K, omega).exact();
  const int n = K.dimension();
  if (!reference) reference = rep.exact_form ? base_reference_counts(K, omega) : std::vector<std::size_t>(static_cast<std::size_t>(n + 1), 0);
  rep.reference = *reference;

  struct PerM {
    int m;
    int class_rep;
    std::vector<std::size_t> counts;
    std::vector<double> beta_e, beta_g, gamma;
  };
  std::vector<PerM> per_m;
  for (int m : m_list) {
    if (m < 2) throw Error("oneform", "verify_delahgar", "each m must be at least 2");
    const CoverComplex Cm = cyclic_cover(K, omega, m);
    const CoverHarmonics H = cover_harmonics(Cm);
    const auto classes = conjugacy_classes(Cm.group());
    const ConjugacyClass& c = class_of(classes, ((power % m) + m) % m);
    const ConjugacyClass& e = class_of(classes, Cm.group().identity());
    PerM pm{m, c.representative, {}, {}, {}, {}};
    for (int k = 0; k <= n; ++k) {
      pm.beta_e.push_back(beta_delocalized(Cm, H, k, e));
      pm.beta_g.push_back(beta_delocalized(Cm, H, k, c));
    }
    pm.gamma = gamma_from_betas(pm.beta_e, pm.beta_g, c.size());
    const ExactApproximation approx = exact_approximation(Cm, omega, reference);
    pm.counts = approx.counts;
    long long worst = 0;
    for (long long d : *approx.defect) worst = std::max(worst, d);
    rep.max_defect.push_back(worst);
    rep.defect_bound = std::max(rep.defect_bound, worst);
    rep.m_values.push_back(m);
    per_m.push_back(std::move(pm));
  }

  std::vector<double> ms, slacks;
  for (const auto& pm : per_m) {
    const double inv_m = 1.0 / pm.m;
    auto lhs = partial_alternating_sums(to_double(pm.counts));
    for (double& x : lhs) x *= inv_m;
    const auto rhs = partial_alternating_sums(pm.gamma);
    for (int k = 0; k <= n; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      DelahgarRow r;
      r.m = pm.m;
      r.k = k;
      r.class_rep = pm.class_rep;
      r.count = pm.counts[uk];
      r.beta_e = pm.beta_e[uk];
      r.beta_g = pm.beta_g[uk];
      r.gamma = pm.gamma[uk];
      r.slack = (k + 1) * static_cast<double>(rep.defect_bound) * inv_m;
      r.lhs = lhs[uk];
      r.rhs = rhs[uk] - r.slack;
      r.pass = k == n ? std::abs(lhs[uk] - rhs[uk]) <= tol : lhs[uk] >= r.rhs - tol;
      rep.rows.push_back(r);
    }
    ms.push_back(pm.m);
    slacks.push_back(static_cast<double>(rep.defect_bound) * inv_m);
  }
  rep.slack_exponent = log_log_slope(ms, slacks).value_or(-1.0);
  return rep;
}

struct FibrationRow {
  int m = 0;
  int k = 0;
  int class_rep = 0;
  double beta_e = 0.0;
  double beta_g = 0.0;
  double gamma = 0.0;
  std::size_t betti_cover = 0;  // b_k(M_m), exact
};

struct FibrationReport {
  static constexpr const char* kLabel =
      "asymptotic demonstration: normalized Betti numbers of cyclic covers decay like 1/m; this illustrates the vanishing mechanism in the finite model and is not the vanishing statement itself";
  std::vector<FibrationRow> rows;
  std::vector<double> k0;                        // per degree: max_m m·β_e^k(m)
  std::vector<std::optional<double>> exponent;   // per degree: fitted decay exponent (nullopt if β_e vanishes identically)
  std::vector<bool> bound_holds;                 // per degree: β_e^k(m) <= K0/m for all m
  double exponent_tolerance = 0.1;
  bool all_pass() const {
    for (std::size_t k = 0; k < k0.size(); ++k) {
      if (!bound_holds[k]) return false;
      if (exponent[k] && std::abs(*exponent[k] - 1.0) > exponent_tolerance) return false;
    }
    return true;
  }
};

/// β_e^k(m) = b_k(M_m)/m and γ^k(m) for the generator class across the m-list.
inline FibrationReport fibration_trend_report(const SimplicialComplex& K, const ClosedOneCochain& omega, const std::vector<int>& m_list) {
  if (m_list.empty()) throw Error("oneform", "fibration_trend_report", "m-list is empty");
  FibrationReport rep;
  const int n = K.dimension();
  std::vector<std::vector<double>> beta_e(static_cast<std::size_t>(n + 1));
  std::vector<double> ms;
  for (int m : m_list) {
    if (m < 1) throw Error("oneform", "fibration_trend_report", "m must be positive");
    const CoverComplex Cm = cyclic_cover(K, omega, m);
    const CoverHarmonics H = cover_harmonics(Cm);
    const auto classes = conjugacy_classes(Cm.group());
    const ConjugacyClass& e = class_of(classes, 0);
    const ConjugacyClass& g = class_of(classes, 1 % m);
    std::vector<double> be, bg;
    for (int k = 0; k <= n; ++k) {
      be.push_back(beta_delocalized(Cm, H, k, e));
      bg.push_back(beta_delocalized(Cm, H, k, g));
    }
    const auto gamma = gamma_from_betas(be, bg, g.size());
    for (int k = 0; k <= n; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      rep.rows.push_back(FibrationRow{m, k, g.representative, be[uk], bg[uk], gamma[uk], H.betti[uk]});
      beta_e[uk].push_back(be[uk]);
    }
    ms.push_back(m);
  }
  for (int k = 0; k <= n; ++k) {
    const auto& b = beta_e[static_cast<std::size_t>(k)];
    double k0 = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) k0 = std::max(k0, ms[i] * b[i]);
    bool holds = true;
    for (std::size_t i = 0; i < b.size(); ++i) holds = holds && b[i] <= k0 / ms[i] + 1e-12;
    rep.k0.push_back(k0);
    rep.bound_holds.push_back(holds);
    const auto slope = log_log_slope(ms, b);
    rep.exponent.push_back(slope ? std::optional<double>(-*slope) : std::nullopt);
  }
  return rep;
}

}  // namespace eqhodge
