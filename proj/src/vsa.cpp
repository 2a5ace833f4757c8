#include "olive/vsa.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "olive/errors.hpp"
#include "olive/rng.hpp"

namespace olive {

namespace {

// Deterministic pairwise-tree reduction; keeps parallel batch splits
// bit-stable and permutation differences within rounding noise.
double pairwise_sum(const double* values, std::size_t count) {
    if (count == 0) return 0.0;
    if (count == 1) return values[0];
    const std::size_t half = count / 2;
    return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

double mean(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    return pairwise_sum(values.data(), values.size()) /
           static_cast<double>(values.size());
}

double checked_log(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("discriminator output outside (0,1)");
    return std::log(p);
}

} // namespace

Hypervector bind(const Hypervector& u, const Hypervector& v) {
    if (u.size() != v.size())
        throw ShapeError("bind: dimension mismatch");
    return u.cwiseProduct(v);
}

double cosine_distance(const Hypervector& u, const Hypervector& v) {
    if (u.size() != v.size())
        throw ShapeError("cosine_distance: dimension mismatch");
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0)
        throw std::domain_error("cosine_distance undefined for zero vectors");
    return 1.0 - u.dot(v) / (nu * nv);
}

double adversarial_loss(const BatchContext& ctx) {
    if (!ctx.d_y) throw ShapeError("adversarial_loss: missing discriminator");
    if (ctx.f_vx.size() != ctx.v_x.size() && !ctx.f_vx.empty() && !ctx.v_x.empty())
        throw ShapeError("adversarial_loss: v_x and f_vx lengths differ");

    double loss = 0.0;

    if (!ctx.v_y.empty()) {
        std::vector<double> terms;
        terms.reserve(ctx.v_y.size());
        for (const Hypervector& v : ctx.v_y) terms.push_back(checked_log(ctx.d_y(v)));
        loss += mean(terms);
    }

    if (!ctx.v_gx.empty()) {
        std::vector<double> terms;
        terms.reserve(ctx.v_gx.size());
        for (const Hypervector& v : ctx.v_gx)
            terms.push_back(checked_log(1.0 - ctx.d_y(v)));
        loss += mean(terms);
    }

    if (!ctx.v_x.empty() && !ctx.f_vx.empty()) {
        if (ctx.f_vx.size() != ctx.v_x.size())
            throw ShapeError("adversarial_loss: v_x and f_vx lengths differ");
        std::vector<double> terms;
        terms.reserve(ctx.v_x.size());
        for (std::size_t i = 0; i < ctx.v_x.size(); ++i)
            terms.push_back(checked_log(1.0 - ctx.d_y(bind(ctx.v_x[i], ctx.f_vx[i]))));
        loss += mean(terms);
    }

    return loss;
}

double cyclic_loss(const std::vector<Hypervector>& v_x,
                   const std::vector<Hypervector>& v_cycle) {
    if (v_x.size() != v_cycle.size())
        throw ShapeError("cyclic_loss: batch lengths differ");
    if (v_x.empty()) return 0.0;
    std::vector<double> terms;
    terms.reserve(v_x.size());
    for (std::size_t i = 0; i < v_x.size(); ++i)
        terms.push_back(cosine_distance(v_x[i], v_cycle[i]));
    return mean(terms);
}

double cyclic_loss(const std::vector<std::vector<Hypervector>>& v_x,
                   const std::vector<std::vector<Hypervector>>& v_cycle) {
    if (v_x.size() != v_cycle.size())
        throw ShapeError("cyclic_loss: batch lengths differ");
    if (v_x.empty()) return 0.0;
    std::vector<double> per_sample;
    per_sample.reserve(v_x.size());
    for (std::size_t i = 0; i < v_x.size(); ++i) {
        if (v_x[i].size() != v_cycle[i].size() || v_x[i].empty())
            throw ShapeError("cyclic_loss: feature lists must be non-empty and paired");
        std::vector<double> dists;
        dists.reserve(v_x[i].size());
        for (std::size_t k = 0; k < v_x[i].size(); ++k)
            dists.push_back(cosine_distance(v_x[i][k], v_cycle[i][k]));
        per_sample.push_back(mean(dists));
    }
    return mean(per_sample);
}

double total_loss(const BatchContext& ctx) {
    return adversarial_loss(ctx) + cyclic_loss(ctx.v_x, ctx.v_cycle);
}

std::vector<Hypervector> random_codebook(std::uint64_t seed, int count, int dim) {
    if (dim < 1) throw ParamError("codebook dimension must be >= 1");
    if (count < 0) throw ParamError("codebook count must be >= 0");
    std::vector<Hypervector> book;
    book.reserve(static_cast<std::size_t>(count));
    Rng root(seed);
    for (int i = 0; i < count; ++i) {
        Rng stream = root.child(static_cast<std::uint64_t>(i));
        Hypervector v(dim);
        for (int k = 0; k < dim; ++k)
            v[k] = (stream.next_u64() & 1u) ? 1.0 : -1.0;
        book.push_back(std::move(v));
    }
    return book;
}

std::vector<Hypervector> load_vectors(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    std::vector<Hypervector> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<double> values;
        double x;
        while (row >> x) values.push_back(x);
        if (values.empty()) continue;
        out.push_back(Eigen::Map<const Hypervector>(
            values.data(), static_cast<Eigen::Index>(values.size())));
    }
    if (!out.empty()) {
        const Eigen::Index dim = out.front().size();
        for (const Hypervector& v : out)
            if (v.size() != dim)
                throw FormatError("inconsistent vector dimensions in " + path.string());
    }
    return out;
}

void save_vectors(const std::filesystem::path& path,
                  const std::vector<Hypervector>& vectors) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write: " + path.string());
    out.precision(17);
    for (const Hypervector& v : vectors) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (i) out << ' ';
            out << v[i];
        }
        out << '\n';
    }
}

} // namespace olive
