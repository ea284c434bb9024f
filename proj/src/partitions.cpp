#include "ktdi/partitions.hpp"

#include <algorithm>
#include <stdexcept>

namespace ktdi {

YoungDiagram::YoungDiagram(std::vector<int> columns) : cols_(std::move(columns)) {
    while (!cols_.empty() && cols_.back() == 0) cols_.pop_back();
    for (std::size_t i = 0; i + 1 < cols_.size(); ++i)
        if (cols_[i] < cols_[i + 1])
            throw std::invalid_argument("YoungDiagram: column lengths must be weakly decreasing");
    for (int c : cols_)
        if (c < 0) throw std::invalid_argument("YoungDiagram: negative column length");
    size_ = 0;
    for (int c : cols_) size_ += c;
    if (!cols_.empty()) {
        rows_.assign(static_cast<std::size_t>(cols_[0]), 0);
        for (int j = 1; j <= cols_[0]; ++j) {
            int cnt = 0;
            for (int c : cols_)
                if (c >= j) ++cnt;
            rows_[static_cast<std::size_t>(j - 1)] = cnt;
        }
    }
}

std::vector<std::pair<int, int>> YoungDiagram::cells() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (int i = 1; i <= static_cast<int>(cols_.size()); ++i)
        for (int j = 1; j <= cols_[static_cast<std::size_t>(i - 1)]; ++j)
            out.emplace_back(i, j);
    return out;
}

std::vector<YoungDiagram> partitions_of(int n) {
    std::vector<YoungDiagram> out;
    if (n < 0) return out;
    std::vector<int> cur;
    // decreasing compositions, lexicographic
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = std::min(rest, maxpart); k >= 1; --k) {
            cur.push_back(k);
            rec(rest - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    std::sort(out.begin(), out.end());
    return out;
}

long partition_count(int n) {
    if (n < 0) return 0;
    std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    for (int k = 1; k <= n; ++k)
        for (int m = k; m <= n; ++m) p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - k)];
    return p[static_cast<std::size_t>(n)];
}

void for_each_tuple(int r, int n, const std::function<bool(const YoungTuple&)>& fn) {
    if (r < 1) throw std::invalid_argument("enumerate_tuples: rank must be >= 1");
    if (n < 0) return;
    // cache partition lists per size
    std::vector<std::vector<YoungDiagram>> parts(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) parts[static_cast<std::size_t>(k)] = partitions_of(k);
    YoungTuple t;
    t.diagrams.resize(static_cast<std::size_t>(r));
    bool stop = false;
    std::function<void(int, int)> rec = [&](int slot, int rest) {
        if (stop) return;
        if (slot == r - 1) {
            for (const auto& d : parts[static_cast<std::size_t>(rest)]) {
                t.diagrams[static_cast<std::size_t>(slot)] = d;
                if (!fn(t)) {
                    stop = true;
                    return;
                }
            }
            return;
        }
        for (int k = 0; k <= rest && !stop; ++k)
            for (const auto& d : parts[static_cast<std::size_t>(k)]) {
                t.diagrams[static_cast<std::size_t>(slot)] = d;
                rec(slot + 1, rest - k);
                if (stop) return;
            }
    };
    rec(0, n);
}

std::vector<YoungTuple> enumerate_tuples(int r, int n) {
    std::vector<YoungTuple> out;
    for_each_tuple(r, n, [&](const YoungTuple& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

}  // namespace ktdi
