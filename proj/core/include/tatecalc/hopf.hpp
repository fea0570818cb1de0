// Monomial-basis algebra of H^{*,*}(GL_n) and H^{*,*}(V(m,n)) over the formal
// coefficient ring Z[eps]/(2 eps), together with the Hopf structure maps.
//
// Generators rho_i (or alpha_i on a Stiefel variety) sit in bidegree (2i-1, i)
// and anticommute. Squares follow the table
//
//   rho_i^2 = 0                  if 2i - 1 > n
//   rho_i^2 = eps * rho_{2i-1}   otherwise
//
// where eps models {-1} in bidegree (1,1). Since 2 eps = 0, every coefficient
// carrying a positive eps power lives in Z/2, so eps is central and its Koszul
// signs are invisible. eps powers are kept formal.

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tatecalc/tate.hpp"

namespace tatecalc::hopf {

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

/// c * eps^k with c reduced mod 2 whenever k >= 1.
struct Coefficient {
  long value = 1;
  unsigned eps = 0;

  Coefficient() = default;
  Coefficient(long v, unsigned k = 0);

  bool is_zero() const { return value == 0; }
  friend bool operator==(const Coefficient&, const Coefficient&) = default;
  friend Coefficient operator*(Coefficient a, Coefficient b) { return {a.value * b.value, a.eps + b.eps}; }
};

/// Basis element eps^k * rho_I of the coefficient-extended ring.
struct BasisElement {
  unsigned eps = 0;
  IndexSequence gens;

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
  friend auto operator<=>(const BasisElement& a, const BasisElement& b) {
    if (auto c = a.gens.size() <=> b.gens.size(); c != 0)
      return c;
    if (auto c = a.gens <=> b.gens; c != 0)
      return c;
    return a.eps <=> b.eps;
  }
};

Bidegree bidegree(const BasisElement& e);

struct Monomial {
  IndexSequence gens;
  Coefficient coeff;

  static Monomial generator(int i) { return {IndexSequence{i}, {}}; }
  static Monomial one() { return {}; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Finite Z[eps]/(2 eps)-linear combination of canonical monomials.
class FormalSum {
public:
  using TermMap = std::map<BasisElement, long>;

  FormalSum() = default;
  explicit FormalSum(const Monomial& m);

  void add(const BasisElement& e, long coeff);
  const TermMap& terms() const { return terms_; }
  long coefficient(const BasisElement& e) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  FormalSum& operator+=(const FormalSum& o);
  friend bool operator==(const FormalSum&, const FormalSum&) = default;

private:
  TermMap terms_;
};

enum class RingKind { general_linear, stiefel };

class RingPresentation {
public:
  static RingPresentation general_linear(int n);
  /// V(m,n), generated by alpha_i for n-m < i <= n.
  static RingPresentation stiefel(int m, int n);

  RingKind kind() const { return kind_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int first_generator() const { return n_ - m_ + 1; }
  int last_generator() const { return n_; }
  bool in_range(int i) const { return i >= first_generator() && i <= last_generator(); }
  /// 2i-1 when the square of generator i is eps times that generator; nullopt when it vanishes.
  std::optional<int> square_target(int i) const;
  /// "ρ" for GL_n, "α" for Stiefel varieties.
  std::string symbol() const;
  std::string name() const;

  /// Basis monomials (eps-free) of the ring, in canonical order.
  std::vector<IndexSequence> basis() const;

  friend bool operator==(const RingPresentation&, const RingPresentation&) = default;

private:
  RingPresentation(RingKind kind, int m, int n) : kind_(kind), m_(m), n_(n) {}
  RingKind kind_;
  int m_;
  int n_;
};

struct RewriteStats {
  std::size_t transpositions = 0;
  std::size_t square_rewrites = 0;
};

/// Normal form of the word rho_{w_1} ... rho_{w_k} scaled by `coeff`. The word
/// is absorbed left to right into a sorted accumulator; each transposition of
/// distinct odd generators flips the sign and each adjacent repeat is
/// rewritten by the square table. Throws IndexOutOfRange.
FormalSum normalize_word(std::span<const int> word, Coefficient coeff, const RingPresentation& ring,
                         RewriteStats* stats = nullptr);

FormalSum multiply(const Monomial& x, const Monomial& y, const RingPresentation& ring,
                   RewriteStats* stats = nullptr);
FormalSum multiply(const FormalSum& x, const FormalSum& y, const RingPresentation& ring);

/// Parity of the first degree: word length plus eps power.
int degree_parity(const BasisElement& e);

// Tensors ----------------------------------------------------------------------

struct TensorBasis {
  unsigned eps = 0;
  std::vector<IndexSequence> factors;

  friend bool operator==(const TensorBasis&, const TensorBasis&) = default;
  friend auto operator<=>(const TensorBasis& a, const TensorBasis& b) {
    if (auto c = a.factors <=> b.factors; c != 0)
      return c;
    return a.eps <=> b.eps;
  }
};

/// Element of R_1 (x) ... (x) R_k over the coefficient ring, with the eps
/// power of every term pulled out as a scalar.
class TensorSum {
public:
  using TermMap = std::map<TensorBasis, long>;

  TensorSum() = default;
  explicit TensorSum(std::vector<RingPresentation> rings) : rings_(std::move(rings)) {}

  /// 1 (x) ... (x) 1.
  static TensorSum unit(std::vector<RingPresentation> rings);

  const std::vector<RingPresentation>& rings() const { return rings_; }
  std::size_t arity() const { return rings_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  long coefficient(const TensorBasis& b) const;
  bool has_eps_terms() const;

  void add(const TensorBasis& b, long coeff);
  TensorSum& operator+=(const TensorSum& o);
  friend bool operator==(const TensorSum&, const TensorSum&) = default;

private:
  std::vector<RingPresentation> rings_;
  TermMap terms_;
};

Bidegree bidegree(const TensorBasis& b);

/// Product in the graded tensor product:
/// (a_1 (x) ... (x) a_k)(b_1 (x) ... (x) b_k) = (-1)^{sum_{i>j} |a_i||b_j|} a_1 b_1 (x) ... (x) a_k b_k.
TensorSum multiply(const TensorSum& x, const TensorSum& y);

/// rho_i (x) 1 + 1 (x) rho_i extended multiplicatively; throws IndexOutOfRange.
TensorSum comultiply(const Monomial& x, int n);
TensorSum comultiply(const FormalSum& x, int n);

/// rho_I -> (-1)^{|I|} rho_I.
Monomial antipode(const Monomial& x);
FormalSum antipode(const FormalSum& x);

/// Applies the comultiplication to factor `pos`, which must be a GL_n factor.
TensorSum comultiply_factor(const TensorSum& x, std::size_t pos);
TensorSum antipode_factor(const TensorSum& x, std::size_t pos);
/// Swaps factors `pos` and `pos+1` with the Koszul sign.
TensorSum swap_factors(const TensorSum& x, std::size_t pos);
/// Cup product of factors `pos` and `pos+1` (pullback along the diagonal).
TensorSum multiply_factors(const TensorSum& x, std::size_t pos);

// Coactions ----------------------------------------------------------------------

/// Images of the module generators under a coaction M -> H (x) M.
struct CoactionFormula {
  std::string name;
  RingPresentation group;
  RingPresentation module;
  std::map<int, TensorSum> images;
};

/// Extends the generator images multiplicatively to eps^k rho_K.
TensorSum apply_coaction(const CoactionFormula& f, const Monomial& x);

/// Every image term has the bidegree of its source generator.
bool preserves_bidegree(const CoactionFormula& f);

/// rho_i -> 1 (x) rho_i on GL_n.
CoactionFormula trivial_coaction(int n);

struct DerivationStep {
  std::string map;  // the pulled-back map, e.g. "σ23^*"
  TensorSum value;
};

struct AdjointDerivation {
  CoactionFormula formula;
  std::map<int, std::vector<DerivationStep>> steps;  // per generator
};

/// Pulls a basis monomial of GL_n back along (h,g) -> h g h^{-1}, factored as
/// diagonal, inversion on the middle factor, swap of factors 2 and 3, and
/// double multiplication. Returns every intermediate normal form.
std::vector<DerivationStep> adjoint_pullback(const Monomial& x, int n);

AdjointDerivation derive_adjoint_coaction(int n);

/// Action of GL_m on V'(m,n): alpha_i -> rho_i (x) 1 + 1 (x) alpha_i for i <= m,
/// 1 (x) alpha_i otherwise.
CoactionFormula stiefel_coaction(int m, int n);

// Dual algebra -----------------------------------------------------------------

/// Structure constants of the dual of H^{*,*}(GL_n): the coefficient of
/// dual(rho_K) in dual(rho_I) * dual(rho_J) is the coefficient of
/// rho_I (x) rho_J in comultiply(rho_K). The pairing carries no Koszul sign,
/// so constants are determined up to unit sign.
struct DualAlgebra {
  int n = 0;
  int max_word = 0;
  std::vector<IndexSequence> basis;
  /// Nonzero products only; keys are (I, J), values are sums over dual basis elements.
  std::map<std::pair<IndexSequence, IndexSequence>, FormalSum> products;

  FormalSum product(const IndexSequence& a, const IndexSequence& b) const;
};

DualAlgebra dual_algebra(int n, int max_word);

struct ExteriorCheck {
  bool squares_vanish = true;
  bool anticommute = true;
  bool unit = true;
  bool generated = true;  // dual(rho_{i_1}) ... dual(rho_{i_k}) = dual(rho_{i_1..i_k})
  std::vector<std::string> failures;

  bool passed() const { return squares_vanish && anticommute && unit && generated; }
};

ExteriorCheck check_exterior(const DualAlgebra& dual);

// Rendering ----------------------------------------------------------------------

/// "ρ[1,2] + ε·ρ[3]".
std::string to_string(const FormalSum& x, const std::string& symbol = "ρ");
/// "ρ[1]⊗1 + 1⊗ρ[1]".
std::string to_string(const TensorSum& x);

nlohmann::json to_json(const FormalSum& x);
nlohmann::json to_json(const TensorSum& x);
nlohmann::json to_json(const CoactionFormula& f);
nlohmann::json to_json(const DualAlgebra& d);

}  // namespace tatecalc::hopf
