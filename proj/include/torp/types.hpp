#ifndef TORP_TYPES_HPP
#define TORP_TYPES_HPP

//
// Shared carrier types: dense column-major matrices and sorted column
// index sets. Every solver, generator and I/O routine works on these.
//

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace torp {

using Index = Eigen::Index;

// Column-major 64-bit real matrix; houses data, low-rank, corruption and
// noise matrices alike.
using DenseMatrix = Eigen::MatrixXd;
using Vector      = Eigen::VectorXd;

// Sorted, duplicate-free set of column indices. Used for outlier supports
// and thresholding results.
class ColumnIndexSet {
public:
    ColumnIndexSet() = default;

    explicit ColumnIndexSet(std::vector<Index> indices) {
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
        if (!indices.empty() && indices.front() < 0)
            throw std::invalid_argument("ColumnIndexSet: negative index");
        indices_ = std::move(indices);
    }

    ColumnIndexSet(std::initializer_list<Index> indices)
        : ColumnIndexSet(std::vector<Index>(indices)) {}

    Index size() const { return static_cast<Index>(indices_.size()); }
    bool empty() const { return indices_.empty(); }

    bool contains(Index i) const {
        return std::binary_search(indices_.begin(), indices_.end(), i);
    }

    // Largest index + 1 required of an associated matrix.
    Index min_width() const { return indices_.empty() ? 0 : indices_.back() + 1; }

    ColumnIndexSet united_with(const ColumnIndexSet& other) const {
        std::vector<Index> merged;
        merged.reserve(indices_.size() + other.indices_.size());
        std::set_union(indices_.begin(), indices_.end(),
                       other.indices_.begin(), other.indices_.end(),
                       std::back_inserter(merged));
        return from_sorted_unique(std::move(merged));
    }

    ColumnIndexSet intersected_with(const ColumnIndexSet& other) const {
        std::vector<Index> out;
        std::set_intersection(indices_.begin(), indices_.end(),
                              other.indices_.begin(), other.indices_.end(),
                              std::back_inserter(out));
        return from_sorted_unique(std::move(out));
    }

    ColumnIndexSet minus(const ColumnIndexSet& other) const {
        std::vector<Index> out;
        std::set_difference(indices_.begin(), indices_.end(),
                            other.indices_.begin(), other.indices_.end(),
                            std::back_inserter(out));
        return from_sorted_unique(std::move(out));
    }

    const std::vector<Index>& indices() const { return indices_; }

    auto begin() const { return indices_.begin(); }
    auto end() const { return indices_.end(); }

    friend bool operator==(const ColumnIndexSet& a, const ColumnIndexSet& b) {
        return a.indices_ == b.indices_;
    }
    friend bool operator!=(const ColumnIndexSet& a, const ColumnIndexSet& b) {
        return !(a == b);
    }

private:
    static ColumnIndexSet from_sorted_unique(std::vector<Index> v) {
        ColumnIndexSet s;
        s.indices_ = std::move(v);
        return s;
    }

    std::vector<Index> indices_;
};

}  // namespace torp

#endif  // TORP_TYPES_HPP
