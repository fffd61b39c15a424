// Seeded generators for based chain complexes and twisted-sum short exact
// sequences, shared by the randomized property suites and the CLI
// multiplicativity task.
#pragma once

#include <random>
#include <vector>

#include "torsionlab/complex.hpp"

namespace torsionlab {

// Staircase complex in split coordinates: dims[i] = r[i+1] + h[i] + r[i]
// with d_i the identity from the lifted slot onto the image slot one degree
// down, and unit homology bases in the middle slot. r lists the boundary
// ranks and must have h.size() + 1 entries with r.front() = r.back() = 0.
BasedChainComplex staircase_complex(const TowerPtr& tower,
                                    const std::vector<std::string>& vars,
                                    const std::vector<int>& r,
                                    const std::vector<int>& h);

// Random based complex of length n: a staircase with random boundary ranks
// and homology dimensions, conjugated by random based coordinate changes
// built from +-c*t^k scalings and transvections. Every per-degree
// dimension stays <= max_dim (max_dim >= 1).
BasedChainComplex random_based_complex(std::mt19937& rng,
                                       const TowerPtr& tower,
                                       const std::vector<std::string>& vars,
                                       int n, int max_dim);

// Conjugates the complex in place by random based changes of coordinates
// in every degree, transporting any homology chains along; the randomized
// suites use it to hide the split staircase coordinates.
void scramble_basis(std::mt19937& rng, BasedChainComplex& c);

// Twisted direct sum total = sub (+) quot with boundary [[d', f],[0, d'']]
// where f = d' g - g d'' for a random sparse degreewise map g; this always
// squares to zero. incl/proj are the block inclusion and projection, and
// the total complex carries freshly computed homology bases.
struct TwistedSumSES {
  BasedChainComplex total;
  std::vector<Matrix<RatFunc>> incl;
  std::vector<Matrix<RatFunc>> proj;
};

TwistedSumSES random_twisted_sum(std::mt19937& rng,
                                 const BasedChainComplex& sub,
                                 const BasedChainComplex& quot);

}  // namespace torsionlab
