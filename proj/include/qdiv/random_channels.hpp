#pragma once

// Seeded random channels for property suites and the `sample` command.
//
// random_channel draws a complex Ginibre matrix G (4 x rank), forms the
// Hilbert-Schmidt state C = G G^dag / tr, and imposes Tr_2 C = 1/2 by the
// congruence C -> (S (x) 1) C (S (x) 1) with S = (2 Tr_2 C)^(-1/2). The
// congruence keeps C positive and keeps its rank.

#include <random>

#include "qdiv/channel.hpp"

namespace qdiv {

using Rng = std::mt19937_64;

PauliTransferMatrix random_channel(Rng& rng, int rank = 4);
Matrix3 random_rotation(Rng& rng);
// Rotation-conjugated Pauli channel with lambdas uniform in the tetrahedron.
PauliTransferMatrix random_unital_channel(Rng& rng);
Vector3 random_tetrahedron_point(Rng& rng);
// Trace-preserving 4x4 matrix with the lower rows uniform in [-1, 1].
Matrix4 random_tp_matrix(Rng& rng);

}  // namespace qdiv
