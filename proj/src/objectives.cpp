#include "flapevo/objectives.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "flapevo/errors.hpp"

namespace flapevo {

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw ConfigError("dominance comparison needs equal-length key vectors");
    }
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<std::vector<double>>& keys) {
    const std::size_t n = keys.size();
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(keys[p], keys[q])) {
                dominated_by[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(keys[q], keys[p])) {
                dominated_by[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated_by[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<std::vector<double>>& keys,
                                      const std::vector<std::size_t>& front) {
    const std::size_t m = front.size();
    std::vector<double> distance(m, 0.0);
    if (m == 0) return distance;
    const std::size_t dims = keys[front[0]].size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (m <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }
    std::vector<std::size_t> order(m);
    for (std::size_t d = 0; d < dims; ++d) {
        for (std::size_t i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return keys[front[a]][d] < keys[front[b]][d];
        });
        const double lo = keys[front[order.front()]][d];
        const double hi = keys[front[order.back()]][d];
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        const double range = hi - lo;
        if (range <= 0.0) continue;  // degenerate key: no spread information
        for (std::size_t i = 1; i + 1 < m; ++i) {
            if (distance[order[i]] == inf) continue;
            distance[order[i]] +=
                (keys[front[order[i + 1]]][d] - keys[front[order[i - 1]]][d]) / range;
        }
    }
    return distance;
}

}  // namespace flapevo
