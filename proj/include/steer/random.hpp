#pragma once

#include <cstddef>
#include <random>

#include "steer/quantum.hpp"

namespace steer {

using Rng = std::mt19937_64;

/// Haar-distributed unitary (Gram-Schmidt on a complex Gaussian matrix).
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
/// Column-orthonormal rows x cols matrix, rows >= cols.
ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng);
/// G G^dagger / tr, G complex Gaussian with `rank` columns (full rank by default).
DensityMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank = 0);
/// S^{-1/2} A_a S^{-1/2} with A_a random positive and S = sum_a A_a.
Povm random_povm(std::size_t dim, std::size_t outcomes, Rng& rng, std::string label = "random");
/// Random instrument realizing `povm`: K_{a mu} = V_{a mu} sqrt(M_a) where the
/// blocks V_{a mu} stack into an isometry, so sum_mu K^dagger K = M_a.
Instrument random_instrument(const Povm& povm, std::size_t kraus_per_outcome, Rng& rng);

}  // namespace steer
