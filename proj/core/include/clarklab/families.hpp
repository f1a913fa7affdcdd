#pragma once

// Built-in families with closed-form ground truth: monomials z^k, the
// singular function exp((z+1)/(z-1)), and truncated Blaschke products with
// zeros (λ_n - i)/(λ_n + i), λ_n = n^α + i n^{α-1}.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "clarklab/clark.hpp"
#include "clarklab/inner.hpp"

namespace clarklab {

struct Monomial {
  int k = 1;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct ExpExample {
  friend bool operator==(const ExpExample&, const ExpExample&) = default;
};

struct CounterexampleBlaschke {
  double alpha = 1.0;   // in (0, 1]
  int K = 64;           // zeros n = 1..K
  bool symmetrized = false;  // also include zeros for -Re λ_n + i Im λ_n
  friend bool operator==(const CounterexampleBlaschke&, const CounterexampleBlaschke&) = default;
};

using FamilySpec = std::variant<Monomial, ExpExample, CounterexampleBlaschke>;

/// "monomial:K", "exp", "counterexample:ALPHA:K" or "counterexample:ALPHA:K:sym".
/// Throws kInvalidInput.
FamilySpec parse_family(std::string_view text);
std::string to_string(const FamilySpec& f);

InnerFunction inner_function(const FamilySpec& f);

/// Accumulation points of the family's Clark atoms (θ = 0 for exp and the
/// Blaschke family, none for monomials).
std::vector<CirclePoint> accumulation_points(const FamilySpec& f);

/// ζ_n = (2nπi+1)/(2nπi-1) as an angle: π + 2 atan(2nπ).
double exp_atom_angle(long long n);
/// 2/(4n²π² + 1).
double exp_atom_mass(long long n);

/// Atoms n_min..n_max from the closed forms; accumulation {θ = 0}.
ClarkData exp_example_closed_form(long long n_min, long long n_max);
/// |n| ≤ M.
ClarkData exp_example_symmetric(long long M);
/// N nested atoms, n ∈ [-⌊N/2⌋, N - 1 - ⌊N/2⌋].
ClarkData exp_example_section(std::size_t N);

/// Atoms with |n| ≤ M found numerically on the arc between the midpoints
/// that separate them from n = ±(M+1).
ClarkData exp_example_numeric(long long M, double alpha = 0.0, const ScanOptions& opts = {});

/// Clark data for any family. Monomials and Blaschke products are scanned on
/// the full circle; for exp, `truncation` is M in |n| ≤ M.
ClarkData family_clark_data(const FamilySpec& f, double alpha, std::size_t truncation,
                            const ScanOptions& opts = {});

/// Zeros (λ_n - i)/(λ_n + i).
std::vector<Complex> counterexample_zeros(const CounterexampleBlaschke& c);

struct DivergenceRow {
  int K = 0;
  std::size_t atom_count = 0;
  double lemma61 = 0.0;        // over all atoms of the truncation, squared masses
  std::size_t witness = 0;
  double witness_theta = 0.0;
  double window_delta = 0.0;   // final δ; the window holds atoms at angular distance (δ, π/2] from θ = 0
  std::size_t window_atoms = 0;
  double window_sup = 0.0;     // criterion restricted to window atoms as the outer index
};

struct DivergenceReport {
  std::string family;
  std::vector<DivergenceRow> rows;
  bool strictly_increasing = false;
  double growth = 0.0;         // last / first
  double max_relative_change = 0.0;  // max |v_i/v_0 - 1|
};

/// Clark atoms (α = 0) of each truncated product, squared masses, and the
/// atom-sum criterion per K.
DivergenceReport counterexample_divergence(double alpha, std::span<const int> Ks,
                                           bool symmetrized = false);

/// The exp example through the same pipeline, with K read as |n| ≤ K.
DivergenceReport exp_contrast(std::span<const int> Ks);

}  // namespace clarklab
