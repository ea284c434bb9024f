#ifndef KTDI_PARTITIONS_HPP
#define KTDI_PARTITIONS_HPP

#include <functional>
#include <vector>

namespace ktdi {

/// Young diagram stored by column lengths lambda_1 >= lambda_2 >= ... > 0,
/// with the transpose cached (both the column and row profile enter every
/// localization factor).
class YoungDiagram {
public:
    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<int> columns);

    const std::vector<int>& columns() const { return cols_; }
    const std::vector<int>& rows() const { return rows_; }  // transpose columns
    int size() const { return size_; }
    bool empty() const { return cols_.empty(); }

    /// lambda_i, 1-based; 0 beyond the diagram.
    int col(int i) const { return (i >= 1 && i <= static_cast<int>(cols_.size())) ? cols_[i - 1] : 0; }
    /// lambda'_j, 1-based; 0 beyond the diagram.
    int row(int j) const { return (j >= 1 && j <= static_cast<int>(rows_.size())) ? rows_[j - 1] : 0; }

    YoungDiagram transpose() const { return YoungDiagram(rows_); }

    /// Cells (i, j), 1-based, column-major.
    std::vector<std::pair<int, int>> cells() const;

    /// arm a_Y(s) = lambda_i - j (may be negative outside the diagram)
    int arm(int i, int j) const { return col(i) - j; }
    /// leg l_Y(s) = lambda'_j - i
    int leg(int i, int j) const { return row(j) - i; }
    /// co-arm a'(s) = j - 1, co-leg l'(s) = i - 1
    static int coarm(int /*i*/, int j) { return j - 1; }
    static int coleg(int i, int /*j*/) { return i - 1; }

    friend bool operator==(const YoungDiagram& a, const YoungDiagram& b) { return a.cols_ == b.cols_; }
    friend bool operator<(const YoungDiagram& a, const YoungDiagram& b) { return a.cols_ < b.cols_; }

private:
    std::vector<int> cols_, rows_;
    int size_ = 0;
};

/// Ordered r-tuple of Young diagrams, the index set of localization sums.
struct YoungTuple {
    std::vector<YoungDiagram> diagrams;

    int total_size() const {
        int n = 0;
        for (const auto& d : diagrams) n += d.size();
        return n;
    }
    int rank() const { return static_cast<int>(diagrams.size()); }
};

/// All partitions of n in canonical (lexicographic on column vectors) order.
std::vector<YoungDiagram> partitions_of(int n);

/// Number of partitions of n.
long partition_count(int n);

/// Streaming enumeration of all r-tuples with total size n, canonical order
/// (lexicographic on the sequence of partitions). Callback returns false to
/// stop early.
void for_each_tuple(int r, int n, const std::function<bool(const YoungTuple&)>& fn);

/// Materialized version of for_each_tuple.
std::vector<YoungTuple> enumerate_tuples(int r, int n);

}  // namespace ktdi

#endif
