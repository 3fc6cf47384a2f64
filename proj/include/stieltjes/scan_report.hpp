#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace stieltjes {

struct ScanRow {
    double x = 0.0;
    double value = 0.0;
};

/// Result of sampling a statistic over an ascending grid.
struct ScanReport {
    std::string label;
    double parameter = 0.0; // exponent or other scan parameter, if any
    std::vector<ScanRow> rows;

    double min_value = std::numeric_limits<double>::infinity();
    double max_value = -std::numeric_limits<double>::infinity();
    double argmin = 0.0;
    double argmax = 0.0;
    double tail_from = 0.0;
    double tail_sup = 0.0;    // sup |value| over rows with x >= tail_from
    std::vector<std::pair<double, double>> sign_changes;
    std::size_t count = 0;    // number of sign changes

    void add_row(double x, double value) { rows.push_back({x, value}); }

    double last_value() const { return rows.empty() ? 0.0 : rows.back().value; }

    void finish(double tail_start) {
        tail_from = tail_start;
        tail_sup = 0.0;
        sign_changes.clear();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            if (r.value < min_value) {
                min_value = r.value;
                argmin = r.x;
            }
            if (r.value > max_value) {
                max_value = r.value;
                argmax = r.x;
            }
            if (r.x >= tail_from)
                tail_sup = std::max(tail_sup, std::abs(r.value));
            if (i > 0 && (rows[i - 1].value < 0.0) != (r.value < 0.0))
                sign_changes.emplace_back(rows[i - 1].x, r.x);
        }
        count = sign_changes.size();
    }
};

} // namespace stieltjes
