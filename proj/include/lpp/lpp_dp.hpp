#pragma once

#include "lpp/format.hpp"
#include "lpp/lattice.hpp"
#include "lpp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpp {

inline constexpr std::uint64_t default_cell_cap = 200'000'000;

class MemoryCapExceeded : public std::runtime_error {
public:
    MemoryCapExceeded(const LatticePoint& box, std::uint64_t cap)
        : std::runtime_error("lattice box " + box.to_string() + " exceeds the cell cap of " +
                             std::to_string(cap) + " entries") {}
};

// Number of lattice cells in [0, box]; throws before anything that size
// would be allocated.
inline std::uint64_t checked_cell_count(const LatticePoint& box,
                                        std::uint64_t cap = default_cell_cap) {
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < box.dim(); ++i) {
        const std::uint64_t w = static_cast<std::uint64_t>(box[i]) + 1;
        if (cells > cap / w) throw MemoryCapExceeded(box, cap);
        cells *= w;
    }
    if (cells > cap) throw MemoryCapExceeded(box, cap);
    return cells;
}

namespace detail {

// Core sweep shared by the field-backed and sampled entry points.
//
// `weight` is invoked exactly once per cell of [0, corner], in lexicographic
// order of coordinates, origin included (its value is ignored: path sums
// exclude the origin and include the endpoint). Recurrence:
//   T(0) = 0,  T(v) = X(v) + max_{i: v_i > 0} T(v - e_i).
// d = 2 runs on a single rolling row; higher d keeps the full value array.
template <typename WeightFn>
double last_passage_sweep(const LatticePoint& corner, WeightFn&& weight, std::uint64_t cell_cap) {
    checked_cell_count(corner, cell_cap);
    const std::size_t d = corner.dim();
    std::vector<std::int64_t> v(d, 0);

    if (d == 2) {
        const std::int64_t rows = corner[0];
        const std::int64_t cols = corner[1];
        std::vector<double> row(static_cast<std::size_t>(cols) + 1, 0.0);
        for (std::int64_t i = 0; i <= rows; ++i) {
            v[0] = i;
            for (std::int64_t j = 0; j <= cols; ++j) {
                v[1] = j;
                const double w = weight(std::span<const std::int64_t>(v));
                const std::size_t c = static_cast<std::size_t>(j);
                if (i == 0 && j == 0)
                    row[0] = 0.0;
                else if (i == 0)
                    row[c] = w + row[c - 1];
                else if (j == 0)
                    row[0] = w + row[0];
                else
                    row[c] = w + std::max(row[c], row[c - 1]);  // above vs left
            }
        }
        return row[static_cast<std::size_t>(cols)];
    }

    std::vector<std::uint64_t> stride(d, 1);
    for (std::size_t i = d - 1; i > 0; --i)
        stride[i - 1] = stride[i] * (static_cast<std::uint64_t>(corner[i]) + 1);
    const std::uint64_t cells = stride[0] * (static_cast<std::uint64_t>(corner[0]) + 1);

    std::vector<double> value(cells, 0.0);
    for (std::uint64_t k = 0; k < cells; ++k) {
        const double w = weight(std::span<const std::int64_t>(v));
        if (k != 0) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < d; ++i)
                if (v[i] > 0) best = std::max(best, value[k - stride[i]]);
            value[k] = w + best;
        }
        // odometer step: last coordinate fastest, matching flat index order
        for (std::size_t i = d; i-- > 0;) {
            if (v[i] < corner[i]) {
                ++v[i];
                break;
            }
            v[i] = 0;
        }
    }
    return value[cells - 1];
}

} // namespace detail

// A dense realization of site weights on [0, box].
class WeightField {
public:
    WeightField(LatticePoint box, std::vector<double> values)
        : box_(std::move(box)), values_(std::move(values)) {
        const std::uint64_t cells = checked_cell_count(box_);
        if (values_.size() != cells)
            throw std::invalid_argument("weight field size " + std::to_string(values_.size()) +
                                        " does not match box " + box_.to_string());
        for (double w : values_)
            if (!std::isfinite(w))
                throw std::invalid_argument("weight field entries must be finite");
    }

    // One draw per cell in lexicographic (row-major) order, origin included,
    // so sampled fields and the on-demand DP consume streams identically.
    static WeightField sample(const WeightDistribution& dist, const LatticePoint& box,
                              RandomStream& stream, std::uint64_t cell_cap = default_cell_cap) {
        const std::uint64_t cells = checked_cell_count(box, cell_cap);
        std::vector<double> values;
        values.reserve(cells);
        for (std::uint64_t k = 0; k < cells; ++k) values.push_back(dist.sample_one(stream));
        return WeightField(box, std::move(values));
    }

    const LatticePoint& box() const { return box_; }
    const std::vector<double>& values() const { return values_; }

    std::uint64_t index_of(std::span<const std::int64_t> v) const {
        std::uint64_t idx = 0;
        std::uint64_t stride = 1;
        for (std::size_t i = box_.dim(); i-- > 0;) {
            idx += static_cast<std::uint64_t>(v[i]) * stride;
            stride *= static_cast<std::uint64_t>(box_[i]) + 1;
        }
        return idx;
    }

    double value_at(std::span<const std::int64_t> v) const { return values_[index_of(v)]; }
    double value_at(const LatticePoint& z) const {
        return value_at(std::span<const std::int64_t>(z.coords()));
    }

    // Debug CSV: header row, then one line per lattice point (coords, value)
    // in lexicographic order.
    void dump_csv(std::ostream& out) const {
        const std::size_t d = box_.dim();
        for (std::size_t i = 0; i < d; ++i) out << "z_" << (i + 1) << ',';
        out << "value\n";
        std::vector<std::int64_t> v(d, 0);
        for (double w : values_) {
            for (std::size_t i = 0; i < d; ++i) out << v[i] << ',';
            out << fmt_g12(w) << '\n';
            for (std::size_t i = d; i-- > 0;) {
                if (v[i] < box_[i]) {
                    ++v[i];
                    break;
                }
                v[i] = 0;
            }
        }
    }

private:
    LatticePoint box_;
    std::vector<double> values_;
};

inline void check_within(const WeightField& field, const LatticePoint& z) {
    if (z.dim() != field.box().dim())
        throw std::invalid_argument("target dimension " + std::to_string(z.dim()) +
                                    " does not match field dimension " +
                                    std::to_string(field.box().dim()));
    for (std::size_t i = 0; i < z.dim(); ++i)
        if (z[i] > field.box()[i])
            throw std::invalid_argument("target " + z.to_string() + " lies outside field box " +
                                        field.box().to_string());
}

// Last-passage time T(z) over an explicit field.
inline double last_passage_time(const WeightField& field, const LatticePoint& z,
                                std::uint64_t cell_cap = default_cell_cap) {
    check_within(field, z);
    return detail::last_passage_sweep(
        z, [&](std::span<const std::int64_t> v) { return field.value_at(v); }, cell_cap);
}

// T(z) with weights drawn on demand, never materialized. Draw order is the
// same lexicographic sweep used by WeightField::sample.
inline double last_passage_sampled(const WeightDistribution& dist, const LatticePoint& corner,
                                   RandomStream& stream,
                                   std::uint64_t cell_cap = default_cell_cap) {
    return detail::last_passage_sweep(
        corner, [&](std::span<const std::int64_t>) { return dist.sample_one(stream); }, cell_cap);
}

// T(z) for every target from one full-box sweep. Values match per-target
// calls exactly (same recurrence, same evaluation order per cell).
inline std::vector<double> last_passage_profile(const WeightField& field,
                                                const std::vector<LatticePoint>& targets,
                                                std::uint64_t cell_cap = default_cell_cap) {
    for (const LatticePoint& z : targets) check_within(field, z);
    if (targets.empty()) return {};

    const LatticePoint& box = field.box();
    const std::size_t d = box.dim();
    const std::uint64_t cells = checked_cell_count(box, cell_cap);

    std::vector<std::uint64_t> stride(d, 1);
    for (std::size_t i = d; i-- > 1;)
        stride[i - 1] = stride[i] * (static_cast<std::uint64_t>(box[i]) + 1);

    std::vector<double> value(cells, 0.0);
    std::vector<std::int64_t> v(d, 0);
    for (std::uint64_t k = 0; k < cells; ++k) {
        if (k != 0) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < d; ++i)
                if (v[i] > 0) best = std::max(best, value[k - stride[i]]);
            value[k] = field.values()[k] + best;
        }
        for (std::size_t i = d; i-- > 0;) {
            if (v[i] < box[i]) {
                ++v[i];
                break;
            }
            v[i] = 0;
        }
    }

    std::vector<double> out;
    out.reserve(targets.size());
    for (const LatticePoint& z : targets)
        out.push_back(value[field.index_of(std::span<const std::int64_t>(z.coords()))]);
    return out;
}

} // namespace lpp
