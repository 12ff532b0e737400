#pragma once

// Built-in complexes and the documented data that goes with them (vertex
// functions for the Witten and Morse checks, integer 1-cochains, cycle bases).

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "eqhodge/complex.hpp"
#include "eqhodge/cover.hpp"
#include "eqhodge/error.hpp"
#include "eqhodge/group.hpp"

namespace eqhodge {

inline SimplicialComplex cycle_complex(int n) {
  if (n < 3) throw Error("complex", "builtin_complex", "cycle(n) needs n >= 3");
  std::vector<Simplex> facets;
  for (int i = 0; i < n; ++i) {
    Simplex e{i, (i + 1) % n};
    std::sort(e.begin(), e.end());
    facets.push_back(e);
  }
  return build_complex(facets);
}

/// Six-vertex real projective plane (half of the icosahedron).
inline SimplicialComplex rp2_complex() {
  return build_complex({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
}

/// True when p is a dihedral symmetry of the n-cycle, i.e. maps edges to edges.
inline bool is_cycle_automorphism(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  if (n < 3) return false;
  std::vector<int> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[static_cast<std::size_t>(i)] != i) return false;
  for (int i = 0; i < n; ++i) {
    const int d = ((p[static_cast<std::size_t>((i + 1) % n)] - p[static_cast<std::size_t>(i)]) % n + n) % n;
    if (d != 1 && d != n - 1) return false;
  }
  return true;
}

inline constexpr int kMappingTorusLayers = 3;

/// Mapping torus of the simplicial automorphism p of cycle(n): three copies
/// of the cycle (layer ℓ has vertices ℓ·n + i) joined by triangulated
/// annuli, the last layer glued back to layer 0 through p.
inline SimplicialComplex mapping_torus_complex(const std::vector<int>& p) {
  if (!is_cycle_automorphism(p)) throw Error("complex", "builtin_complex", "mapping_torus needs a rotation or reflection of the cycle");
  const int n = static_cast<int>(p.size());
  const int L = kMappingTorusLayers;
  auto vid = [n](int layer, int i) { return layer * n + ((i % n) + n) % n; };
  auto next = [&](int layer, int i) { return layer + 1 < L ? vid(layer + 1, i) : p[static_cast<std::size_t>(((i % n) + n) % n)]; };
  std::vector<Simplex> facets;
  for (int l = 0; l < L; ++l)
    for (int i = 0; i < n; ++i) {
      Simplex a{vid(l, i), vid(l, i + 1), next(l, i + 1)};
      Simplex b{vid(l, i), next(l, i), next(l, i + 1)};
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      facets.push_back(a);
      facets.push_back(b);
    }
  return build_complex(facets);
}

inline SimplicialComplex torus_complex() { return mapping_torus_complex({0, 1, 2}); }
inline SimplicialComplex klein_bottle_complex() { return mapping_torus_complex({0, 2, 1}); }

/// Wedge of two triangles at vertex 0 (a graph with b₁ = 2).
inline SimplicialComplex figure_eight_complex() { return build_complex({{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}}); }

namespace detail {

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

inline std::vector<int> parse_int_list(const std::string& body, const std::string& name) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = std::min(body.find(',', pos), body.size());
    const std::string tok = body.substr(pos, comma - pos);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) || tok.size() > 6)
      throw Error("complex", "builtin_complex", "cannot parse fixture name '" + name + "'");
    out.push_back(std::stoi(tok));
    pos = comma + 1;
  }
  return out;
}

}  // namespace detail

/// cycle(n), rp2, torus, klein_bottle, mapping_torus(p0,p1,...), figure_eight.
inline SimplicialComplex builtin_complex(const std::string& name) {
  const std::string s = detail::strip_spaces(name);
  if (s == "rp2") return rp2_complex();
  if (s == "torus") return torus_complex();
  if (s == "klein_bottle") return klein_bottle_complex();
  if (s == "figure_eight") return figure_eight_complex();
  auto call = [&](const std::string& head) -> std::optional<std::string> {
    if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return std::nullopt;
    return s.substr(head.size() + 1, s.size() - head.size() - 2);
  };
  if (auto body = call("cycle")) {
    const auto args = detail::parse_int_list(*body, name);
    if (args.size() != 1) throw Error("complex", "builtin_complex", "cycle takes one argument");
    return cycle_complex(args[0]);
  }
  if (auto body = call("mapping_torus")) return mapping_torus_complex(detail::parse_int_list(*body, name));
  throw Error("complex", "builtin_complex", "unknown fixture '" + name + "'");
}

/// f(v) = v / (V − 1).
inline std::vector<double> index_vertex_function(const SimplicialComplex& K) {
  const std::size_t n = K.vertex_count();
  std::vector<double> f(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) f[v] = n > 1 ? static_cast<double>(v) / static_cast<double>(n - 1) : 0.0;
  return f;
}

/// Index function with the values of the two highest vertices exchanged.
/// On rp2 its lower-star matching has C = (1,1,1); on the torus and Klein
/// bottle fixtures it has C = (1,2,1).
inline std::vector<double> swapped_top_vertex_function(const SimplicialComplex& K) {
  std::vector<double> f = index_vertex_function(K);
  if (f.size() >= 2) std::swap(f[f.size() - 1], f[f.size() - 2]);
  return f;
}

/// Seam cochain of a mapping-torus fixture: +1 on every edge crossing from
/// the last layer to layer 0, 0 elsewhere; it is the pullback of the circle
/// direction. Entries are (u, v, value) with u < v.
inline std::vector<std::tuple<int, int, double>> seam_cochain(const SimplicialComplex& K, int fiber_size) {
  const int last = (kMappingTorusLayers - 1) * fiber_size;
  std::vector<std::tuple<int, int, double>> out;
  for (const auto& e : K.simplices(1))
    if (e[0] < fiber_size && e[1] >= last) out.emplace_back(e[0], e[1], -1.0);
  return out;
}

/// Documented H₁ loops of a mapping torus with fibre cycle(n): the circle
/// direction through vertex 0 (closes up when p(0) = 0), then the fibre in
/// layer 0.
inline std::vector<std::vector<int>> mapping_torus_loops(int fiber_size) {
  std::vector<int> circle, fiber;
  for (int l = 0; l < kMappingTorusLayers; ++l) circle.push_back(l * fiber_size);
  for (int i = 0; i < fiber_size; ++i) fiber.push_back(i);
  return {circle, fiber};
}

/// S₃ voltage on the figure eight: the transposition (1 2) on edge [1,2] and
/// the 3-cycle (0 1 2) on edge [3,4]. The cover is connected.
inline VoltageAssignment figure_eight_voltage() {
  VoltageAssignment a;
  a.set(1, 2, 1);
  a.set(3, 4, 3);
  return a;
}

/// A base complex with its documented data. `omega` is set for fixtures
/// with a distinguished integer 1-cochain, `group` for voltage fixtures.
struct FixtureData {
  std::string name;
  SimplicialComplex complex;
  std::vector<double> f;
  std::vector<std::tuple<int, int, double>> omega;
  bool has_omega = false;
  std::vector<std::vector<int>> loops;  // documented H₁ loops as vertex walks
  std::optional<FiniteGroup> group;
  VoltageAssignment voltage;
};

/// Documented data for a builtin name. cycle(n) carries ω = 1 on edge [0,1];
/// mapping tori carry the seam cochain; figure_eight_s3 carries the S₃
/// voltage. rp2 and mapping tori use swapped_top_vertex_function, the
/// others index_vertex_function.
inline FixtureData builtin_fixture(const std::string& name) {
  const std::string s = detail::strip_spaces(name);
  FixtureData d;
  d.name = s;
  if (s == "figure_eight_s3") {
    d.complex = figure_eight_complex();
    d.f = index_vertex_function(d.complex);
    d.group = symmetric_group_3();
    d.voltage = figure_eight_voltage();
    d.loops = {{0, 1, 2}, {0, 3, 4}};
    return d;
  }
  d.complex = builtin_complex(s);
  const bool mapping_torus = s == "torus" || s == "klein_bottle" || s.rfind("mapping_torus(", 0) == 0;
  d.f = (s == "rp2" || mapping_torus) ? swapped_top_vertex_function(d.complex) : index_vertex_function(d.complex);
  if (s.rfind("cycle(", 0) == 0) {
    d.omega = {{0, 1, 1.0}};
    d.has_omega = true;
    std::vector<int> loop(d.complex.vertex_count());
    std::iota(loop.begin(), loop.end(), 0);
    d.loops = {loop};
  } else if (mapping_torus) {
    const int n = static_cast<int>(d.complex.vertex_count()) / kMappingTorusLayers;
    d.omega = seam_cochain(d.complex, n);
    d.has_omega = true;
    d.loops = mapping_torus_loops(n);
  }
  return d;
}

}  // namespace eqhodge
