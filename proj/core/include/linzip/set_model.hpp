#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "linzip/common.hpp"

namespace linzip {

/// One named set. Members are indices into the owning SetSystem's element list, ascending.
struct NamedSet {
    std::string name;
    std::vector<std::size_t> members;
};

/// A set system (hypergraph): an ordered element list and an ordered list of named, nonempty sets.
///
/// Instances are only created through `SetSystem::create`, which enforces unique element
/// identifiers, unique set names, nonempty sets and known members. Elements that belong to no
/// set are dropped and reported through `warnings()`.
class SetSystem {
public:
    struct RawSet {
        std::string name;
        std::vector<std::string> members;
    };

    static SetSystem create(std::vector<std::string> elements, const std::vector<RawSet>& sets);

    const std::vector<std::string>& elements() const { return elements_; }
    const std::vector<NamedSet>& sets() const { return sets_; }
    std::size_t element_count() const { return elements_.size(); }
    std::size_t set_count() const { return sets_.size(); }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    SetSystem() = default;

    std::vector<std::string> elements_;
    std::vector<NamedSet> sets_;
    std::vector<std::string> warnings_;
};

/// Binary |sets| x |elements| matrix, row-major. Entry (i, j) is 1 iff element j is in set i.
class MembershipMatrix {
public:
    MembershipMatrix() = default;
    MembershipMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool at(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c] != 0; }
    void set(std::size_t r, std::size_t c, bool v) { bits_[r * cols_ + c] = v ? 1 : 0; }

    std::span<const std::uint8_t> row(std::size_t r) const { return {bits_.data() + r * cols_, cols_}; }
    std::vector<std::uint8_t> column(std::size_t c) const;

    friend bool operator==(const MembershipMatrix&, const MembershipMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// A permutation of column indices: `at(position) == column`. Positions are 0-based here.
class ColumnOrder {
public:
    ColumnOrder() = default;
    /// Throws std::invalid_argument unless `perm` is a bijection on 0..perm.size()-1.
    explicit ColumnOrder(std::vector<std::size_t> perm);

    static ColumnOrder identity(std::size_t n);

    std::size_t size() const { return perm_.size(); }
    std::size_t at(std::size_t position) const { return perm_[position]; }
    const std::vector<std::size_t>& columns() const { return perm_; }
    /// Inverse permutation: column -> 0-based position.
    std::vector<std::size_t> positions() const;
    ColumnOrder reversed() const;

    friend bool operator==(const ColumnOrder&, const ColumnOrder&) = default;

private:
    std::vector<std::size_t> perm_;
};

/// Column interval [start, end] covered by a set's block link. 1-based positions.
struct ActiveRange {
    std::size_t start = 1;
    std::size_t end = 1;

    bool contains(std::size_t position) const { return start <= position && position <= end; }
    bool overlaps(const ActiveRange& o) const { return start <= o.end && o.start <= end; }

    friend bool operator==(const ActiveRange&, const ActiveRange&) = default;
};

struct BlockCount {
    std::vector<std::size_t> per_set;
    std::size_t total = 0;
};

/// One maximal run of a set's members under a column order, as 0-based positions [first, last].
struct Block {
    std::size_t first = 0;
    std::size_t last = 0;
};

MembershipMatrix build_membership_matrix(const SetSystem& sys);

BlockCount count_blocks(const MembershipMatrix& mat, const ColumnOrder& ord);

/// Maximal runs of ones of one row under `ord`, left to right.
std::vector<Block> blocks_of(const MembershipMatrix& mat, std::size_t set_index, const ColumnOrder& ord);

ActiveRange active_range(std::size_t set_index, const MembershipMatrix& mat, const ColumnOrder& ord);
std::vector<ActiveRange> active_ranges(const MembershipMatrix& mat, const ColumnOrder& ord);

/// True iff the blocks of the two sets, merged by start position, contain the owner pattern X,Y,X.
/// Only meaningful for disjoint sets, which is the only case row sharing ever considers.
bool alternates(std::size_t set_i, std::size_t set_j, const MembershipMatrix& mat, const ColumnOrder& ord);

/// Result of merging columns with identical membership vectors.
struct CollapsedMatrix {
    MembershipMatrix reduced;
    /// groups[k] lists the original columns merged into reduced column k, ascending.
    /// Reduced columns appear in order of their first original column.
    std::vector<std::vector<std::size_t>> groups;

    std::size_t multiplicity(std::size_t k) const { return groups[k].size(); }
};

CollapsedMatrix collapse_duplicate_columns(const MembershipMatrix& mat);

/// Maps an order over reduced columns back to the original columns, duplicates adjacent.
ColumnOrder expand_order(const ColumnOrder& reduced_order, const std::vector<std::vector<std::size_t>>& groups);

}  // namespace linzip
