#include "lipflow/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lipflow/errors.hpp"

namespace lipflow {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

double clamp01(double v) {
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

} // namespace

double sup_distance(const HilbertPoint& p, const HilbertPoint& q) {
    if (p.depth() != q.depth()) {
        throw invalid_input("sup_distance: depth mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        worst = std::max(worst, std::abs(p.coords[i] - q.coords[i]));
    }
    return worst;
}

HilbertEmbedding coordinate_embedding(const Domain& domain, int min_depth) {
    HilbertEmbedding psi;
    if (domain.kind == Domain::Kind::box) {
        const int base = domain.dim;
        psi.depth = std::max(base, min_depth);
        double min_width = domain.hi[0] - domain.lo[0];
        for (int i = 1; i < base; ++i) {
            min_width = std::min(min_width,
                                 domain.hi[static_cast<std::size_t>(i)] - domain.lo[static_cast<std::size_t>(i)]);
        }
        psi.modulus = 1.0 / min_width;
        psi.map = [domain, depth = psi.depth, base](std::span<const double> x) {
            if (static_cast<int>(x.size()) != domain.dim) {
                throw invalid_input("coordinate_embedding: state dimension mismatch");
            }
            if (!domain.contains(x)) {
                throw invalid_input("coordinate_embedding: state outside the domain");
            }
            HilbertPoint p;
            p.coords.resize(static_cast<std::size_t>(depth));
            for (int c = 0; c < depth; ++c) {
                const std::size_t i = static_cast<std::size_t>(c % base);
                p.coords[static_cast<std::size_t>(c)] =
                    clamp01((x[i] - domain.lo[i]) / (domain.hi[i] - domain.lo[i]));
            }
            return p;
        };
        return psi;
    }

    // Torus: trig pairs per coordinate; harmonics extend the depth.
    const int base = 2 * domain.dim;
    psi.depth = std::max(base, min_depth);
    const int harmonics = (psi.depth + base - 1) / base;
    psi.modulus = 0.5 * two_pi * static_cast<double>(harmonics);
    psi.map = [domain, depth = psi.depth](std::span<const double> x) {
        if (static_cast<int>(x.size()) != domain.dim) {
            throw invalid_input("coordinate_embedding: state dimension mismatch");
        }
        if (!domain.contains(x)) {
            throw invalid_input("coordinate_embedding: state outside the domain");
        }
        HilbertPoint p;
        p.coords.resize(static_cast<std::size_t>(depth));
        for (int c = 0; c < depth; ++c) {
            const int pair = c / 2;
            const std::size_t i = static_cast<std::size_t>(pair % domain.dim);
            const double k = static_cast<double>(pair / domain.dim + 1);
            const double angle = two_pi * k * x[i];
            const double wave = (c % 2 == 0) ? std::sin(angle) : std::cos(angle);
            p.coords[static_cast<std::size_t>(c)] = clamp01(0.5 + 0.5 * wave);
        }
        return p;
    };
    return psi;
}

DenseSet DenseSet::random_in(const Domain& domain, int count, std::uint64_t seed) {
    if (count < 1) {
        throw invalid_input("DenseSet: count must be >= 1");
    }
    std::mt19937_64 gen(seed);
    auto unit = [&gen]() {
        return static_cast<double>(gen() >> 11) * 0x1p-53;
    };
    DenseSet dense;
    dense.domain = domain;
    dense.diam = domain.diameter();
    dense.points.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        State q(static_cast<std::size_t>(domain.dim));
        for (int i = 0; i < domain.dim; ++i) {
            const double u = unit();
            q[static_cast<std::size_t>(i)] =
                domain.kind == Domain::Kind::torus
                    ? u
                    : domain.lo[static_cast<std::size_t>(i)] +
                          u * (domain.hi[static_cast<std::size_t>(i)] - domain.lo[static_cast<std::size_t>(i)]);
        }
        dense.points.push_back(std::move(q));
    }
    return dense;
}

HilbertEmbedding dense_embedding(DenseSet dense) {
    if (dense.points.empty()) {
        throw invalid_input("dense_embedding: dense set must be nonempty");
    }
    if (!(dense.diam > 0.0)) {
        throw invalid_input("dense_embedding: diameter bound must be > 0");
    }
    HilbertEmbedding psi;
    psi.depth = static_cast<int>(dense.points.size());
    psi.modulus = 1.0 / dense.diam;
    psi.map = [dense = std::move(dense)](std::span<const double> x) {
        HilbertPoint p;
        p.coords.resize(dense.points.size());
        for (std::size_t k = 0; k < dense.points.size(); ++k) {
            p.coords[k] = std::min(1.0, dense.domain.distance(x, dense.points[k]) / dense.diam);
        }
        return p;
    };
    return psi;
}

InjectivityReport injectivity_check(const HilbertEmbedding& psi, const Domain& domain,
                                    std::span<const std::pair<State, State>> pairs,
                                    double r0, double tol) {
    InjectivityReport report;
    report.pairs = pairs.size();
    report.resolution = r0;
    report.min_image_distance = std::numeric_limits<double>::infinity();
    for (const auto& [x, y] : pairs) {
        const double state_dist = domain.distance(x, y);
        if (state_dist < r0) {
            continue;
        }
        const double image_dist = sup_distance(psi(x), psi(y));
        report.min_image_distance = std::min(report.min_image_distance, image_dist);
        if (!(image_dist > tol)) {
            ++report.violations;
        }
    }
    if (!std::isfinite(report.min_image_distance)) {
        report.min_image_distance = 0.0; // no pair reached the resolution
    }
    report.pass = report.violations == 0;
    return report;
}

} // namespace lipflow
