// Trigraded E2-page of the motivic Rothenberg-Steenrod spectral sequence for
// the GL_{n_{r-1}}-action on V'(n_{r-1},n_r) x A(n_1,...,n_{r-1}):
//
//   E2 = sum_j Lambda(alpha'_i : n_r - n_{r-1} < i <= n_r)[theta_1..theta_{n_{r-1}}] . beta'_j
//
// with alpha'_i in (0, 2i-1, i), theta_i in (1, 2i-1, i) and beta'_j in
// (0, p_j, q_j) for the Tate summands (p_j, q_j) of M(A(n_1,...,n_{r-1})).
// The presentation takes the trivial coaction on A(n_1,...,n_{r-1}) as input;
// its base case is checked by hopf::derive_adjoint_coaction.
//
// The theta algebra is infinite, so every page is truncated at weight q <= max_weight.

#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tatecalc/catalog.hpp"
#include "tatecalc/tate.hpp"

namespace tatecalc::spectral {

using catalog::Signature;

/// `flag` keeps only the Chow height 0 module generators, giving the page of
/// the sequence converging to the flag variety.
enum class Variant { full, flag };

std::string to_string(Variant v);

constexpr long tch(Tridegree t) { return total_chow_height(t); }
constexpr Tridegree alpha_tridegree(int i) { return {0, 2L * i - 1, i}; }
constexpr Tridegree theta_tridegree(int i) { return {1, 2L * i - 1, i}; }
/// Target of d_s: (l, p, q) -> (l + s, p - s + 1, q).
constexpr Tridegree differential_target_degree(Tridegree t, int s) { return {t.l + s, t.p - s + 1, t.q}; }

/// alpha'_S . theta^e . beta'_j.
struct BasisClass {
  std::vector<int> alphas;  // increasing alpha' indices
  std::vector<int> theta;   // theta[i-1] is the exponent of theta_i
  std::size_t beta = 0;     // index into E2Page::betas()
  Tridegree degree;

  friend bool operator==(const BasisClass& a, const BasisClass& b) {
    return a.alphas == b.alphas && a.theta == b.theta && a.beta == b.beta;
  }
};

class E2Page {
public:
  /// Throws InvalidArgument unless r >= 2 and max_weight >= 0.
  static E2Page build(const Signature& sig, Variant variant, long max_weight);

  const Signature& signature() const { return sig_; }
  Variant variant() const { return variant_; }
  long max_weight() const { return max_weight_; }

  const std::vector<int>& alpha_indices() const { return alpha_indices_; }
  int theta_count() const { return theta_count_; }
  /// Module generators ordered by (Chow height, q, p); the first one is R(0)[0].
  const std::vector<Bidegree>& betas() const { return betas_; }

  const std::vector<BasisClass>& basis() const { return basis_; }
  std::optional<std::size_t> find(const BasisClass& key) const;
  std::vector<std::size_t> classes_at(Tridegree t) const;

  /// alpha'_i . 1, when materialized.
  std::optional<std::size_t> alpha_class(int i) const;
  std::optional<std::size_t> beta_class(std::size_t j) const;
  std::optional<std::size_t> theta_class(int i) const;

  /// "α′3·θ1^2·β′2"; the unit generator is written "1" and dropped from products.
  std::string label(const BasisClass& c) const;
  std::string label(std::size_t idx) const { return label(basis_.at(idx)); }

private:
  E2Page(Signature sig) : sig_(std::move(sig)) {}

  Signature sig_;
  Variant variant_ = Variant::full;
  long max_weight_ = 0;
  std::vector<int> alpha_indices_;
  int theta_count_ = 0;
  std::vector<Bidegree> betas_;
  std::vector<BasisClass> basis_;
  std::map<Tridegree, std::vector<std::size_t>> by_degree_;
};

E2Page build_e2(const Signature& sig, Variant variant, long max_weight);

/// Every basis class in the d_s target tridegree of `source`. Throws for s < 2.
std::vector<std::size_t> differential_targets(const E2Page& page, std::size_t source, int s);

/// Projection of the full page onto the flag page (drops module generators of
/// positive Chow height) and the inclusion back.
std::optional<std::size_t> project_to_flag(const E2Page& full, const E2Page& flag, std::size_t cls);
std::size_t include_from_flag(const E2Page& flag, const E2Page& full, std::size_t cls);

struct AlphaFinding {
  int index = 0;
  Tridegree degree;
  std::vector<int> flag_pages;  // pages s with a tch-compatible target
  std::vector<int> full_pages;
  bool targets_agree = true;     // full targets are exactly the included flag targets
  std::map<int, std::vector<std::string>> targets;  // labels on the flag page
};

struct BetaFinding {
  std::size_t index = 0;
  Bidegree degree;
  long tch = 0;
  std::vector<int> pages_with_targets;
  /// "tch" when no class of total Chow height tch-1 exists; "rank" when the
  /// vanishing rests on the rank count instead.
  std::string obstruction;
  bool ok = true;
};

struct SSReport {
  Signature signature;
  long max_weight = 0;
  std::vector<AlphaFinding> alphas;
  std::vector<BetaFinding> flag_betas;
  std::vector<BetaFinding> full_betas;
  bool rank_identity = false;
  bool passed = false;
  std::vector<std::string> notes;
};

/// Candidate pages for d_s(alpha'_i) and vanishing of d_s(beta'_j), s in [2, 2*max_weight].
/// Needs max_weight >= n_r so every alpha' is materialized.
SSReport check_ss_description(const Signature& sig, long max_weight);

struct RankReport {
  Signature signature;
  long max_weight = 0;
  Poly2 target;      // M(A(sig)), truncated
  Poly2 product;     // M(Gr(n_{r-1}, n_r)) * M(A(n_1..n_{r-1})), truncated
  Poly2 e_infinity;  // E2 with every alpha' cancelled against a theta relation, collapsed to (l+p, q)
  bool passed = false;
};

RankReport einfty_rank_check(const Signature& sig, long max_weight);

/// Collapsed (l+p, q) Poincare series of the E2 page from its generator data.
Poly2 e2_series(const E2Page& page);
/// Same series by enumerating the materialized basis.
Poly2 e2_series_from_basis(const E2Page& page);

std::string generator_table(const E2Page& page);
nlohmann::json to_json(const E2Page& page);
nlohmann::json targets_json(const E2Page& page, int max_s);
std::string targets_text(const E2Page& page, int max_s);

std::string to_text(const SSReport& r);
nlohmann::json to_json(const SSReport& r);
std::string to_text(const RankReport& r);
nlohmann::json to_json(const RankReport& r);

/// SVG 1.1 chart: l across, q up, labels stacked per (l, q) cell.
std::string render_svg(const E2Page& page);
/// Writes render_svg(page) to `path`; throws Error on I/O failure.
void chart_svg(const E2Page& page, const std::filesystem::path& path);

}  // namespace tatecalc::spectral
