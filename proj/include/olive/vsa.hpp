#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace olive {

// Dense real hypervector; codebook vectors are bipolar (+1/-1 entries).
using Hypervector = Eigen::VectorXd;

// MAP-style binding: element-wise product. Commutative; self-inverse on
// bipolar vectors, so bind(bind(u, v), v) recovers u.
Hypervector bind(const Hypervector& u, const Hypervector& v);

// 1 - cos(u, v), in [0, 2]. Throws for zero vectors.
double cosine_distance(const Hypervector& u, const Hypervector& v);

// One batch of the quantities the translation losses consume. The
// generator, discriminator and mapper are supplied from outside as
// already-evaluated lists plus the discriminator functional; no networks
// live here. Lists may be empty to isolate individual loss terms.
struct BatchContext {
    std::vector<Hypervector> v_x;     // source hypervectors
    std::vector<Hypervector> v_y;     // real-domain hypervectors
    std::vector<Hypervector> v_gx;    // translated hypervectors
    std::vector<Hypervector> f_vx;    // mapper outputs F(v_x), paired with v_x
    std::vector<Hypervector> v_cycle; // round-trip hypervectors, paired with v_x
    std::function<double(const Hypervector&)> d_y; // discriminator, in (0,1)
};

// E[log D(v_y)] + E[log(1 - D(v_gx))] + E[log(1 - D(v_x (x) F(v_x)))].
// Expectations are batch means; empty lists drop their term. Throws
// std::domain_error when the discriminator leaves (0,1) — clamping is the
// caller's duty.
double adversarial_loss(const BatchContext& ctx);

// Batch mean of cosine distances between paired source and round-trip
// vectors (the n = 1 feature case).
double cyclic_loss(const std::vector<Hypervector>& v_x,
                   const std::vector<Hypervector>& v_cycle);

// General form: per-sample mean over n feature vectors, then batch mean.
double cyclic_loss(const std::vector<std::vector<Hypervector>>& v_x,
                   const std::vector<std::vector<Hypervector>>& v_cycle);

// adversarial_loss(ctx) + cyclic_loss(ctx.v_x, ctx.v_cycle), unweighted.
double total_loss(const BatchContext& ctx);

// Seeded bipolar codebook; entries in {-1, +1}, near-orthogonal pairs in
// expectation for large d.
std::vector<Hypervector> random_codebook(std::uint64_t seed, int count, int dim);

// Plain-text fixture format: one vector per line, space-separated values.
std::vector<Hypervector> load_vectors(const std::filesystem::path& path);
void save_vectors(const std::filesystem::path& path,
                  const std::vector<Hypervector>& vectors);

} // namespace olive
