// Based chain complexes over the rational-function field: exact linear
// algebra, homology, the sign-determined torsion of a based and
// homology-based complex, and the multiplicativity identity for short
// exact sequences.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torsionlab/ring.hpp"

namespace torsionlab {

// What is NOT determined about a reported torsion value.
struct Ambiguity {
  bool sign_free = false;      // value is defined up to +-1
  bool monomial_free = false;  // value is defined up to a monomial factor
  std::string note;
  std::string str() const;
};

struct TorsionResult {
  RatFunc value;
  Ambiguity ambiguity;
  std::vector<std::string> notes;
};

// A chain complex C_n -> ... -> C_1 -> C_0 with the standard coordinate
// basis of each C_i as reference basis. boundaries[i] is d_i: C_i ->
// C_{i-1} (boundaries[0] has zero rows). Homology bases, when present, are
// explicit chains: homology_bases[i] is a list of coordinate vectors in
// C_i whose classes form a basis of H_i.
struct BasedChainComplex {
  TowerPtr tower;
  std::vector<std::string> vars;
  std::vector<int> dims;
  std::vector<Matrix<RatFunc>> boundaries;
  std::optional<std::vector<std::vector<std::vector<RatFunc>>>>
      homology_bases;

  int length() const { return static_cast<int>(dims.size()) - 1; }
  Matrix<RatFunc> d(int i) const;  // i from 0 to length()+1, zero-padded
  RatFunc zero() const;

  // Shape checks plus d_i o d_{i+1} = 0; with homology bases present also
  // verifies each chain is a cycle and the counts match homology ranks.
  void validate() const;
};

// Exact dense linear algebra over the fraction field.
enum class PivotStrategy { kLeftmost, kRightmost };

int matrix_rank(const Matrix<RatFunc>& m);
// Columns of m forming a basis of its column space; the scan order is the
// deterministic choice Eq.-(1)-style torsions depend on not depending on.
std::vector<int> pivot_columns(const Matrix<RatFunc>& m, PivotStrategy s);
// One solution of a x = b, or nullopt when inconsistent.
std::optional<std::vector<RatFunc>> solve_linear(const Matrix<RatFunc>& a,
                                                 const std::vector<RatFunc>& b);
std::vector<std::vector<RatFunc>> kernel_basis(const Matrix<RatFunc>& m);

std::vector<int> homology_rank(const BasedChainComplex& c);
// Cycle representatives of a basis of H_i, found by extending the image
// basis of d_{i+1} to a kernel basis of d_i.
std::vector<std::vector<RatFunc>> homology_basis(const BasedChainComplex& c,
                                                 int i);

// The sign-determined torsion: (-1)^{|C|} times the alternating product of
// transition determinants [d_{i+1}(b^{i+1}) h~^i b^i / c^i], where b^i are
// pivot columns of d_i and h~ the given homology chains. Throws
// NotAcyclicWithoutBases when no bases are given and homology is nonzero,
// InvalidHomologyBasis when given chains are not cycles, have the wrong
// count, or have dependent classes.
TorsionResult torsion_of_complex(
    const BasedChainComplex& c,
    PivotStrategy strategy = PivotStrategy::kLeftmost);

struct MultiplicativityReport {
  RatFunc tor_total;  // Tor(C)
  RatFunc tor_sub;    // Tor(C')
  RatFunc tor_quot;   // Tor(C'')
  RatFunc tor_les;    // torsion of the long exact homology sequence
  int alpha = 0;      // parity sum over alpha_{i-1}(C') alpha_i(C'')
  int epsilon = 0;    // parity of the homology-size interaction term
  RatFunc rhs;        // (-1)^{alpha+epsilon} * product of the three
  bool equal = false;
  std::string str() const;
};

// Verifies that (incl, proj) form a degreewise short exact sequence of
// chain maps with compatible bases, then computes both sides of the
// multiplicativity identity. All three complexes must carry homology bases
// for their nonzero homology. Throws NotExact or IncompatibleBases.
MultiplicativityReport multiplicativity_check(
    const BasedChainComplex& sub, const BasedChainComplex& total,
    const BasedChainComplex& quot, const std::vector<Matrix<RatFunc>>& incl,
    const std::vector<Matrix<RatFunc>>& proj);

}  // namespace torsionlab
