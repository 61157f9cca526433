#include "stacky/fit.hpp"

#include <cmath>

#include "stacky/error.hpp"

namespace stacky {

namespace {

// solve the 3x3 normal equations by Cramer's rule
std::vector<double> solve3(double m[3][3], double rhs[3]) {
    auto det3 = [](double a[3][3]) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    double d = det3(m);
    if (std::abs(d) < 1e-12) throw Error("singular fit system (samples too degenerate)");
    std::vector<double> out(3);
    for (int col = 0; col < 3; ++col) {
        double tmp[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) tmp[i][j] = j == col ? rhs[i] : m[i][j];
        out[col] = det3(tmp) / d;
    }
    return out;
}

}  // namespace

FitResult fit_exponents(const CountSeries& series, std::optional<double> fix_alpha) {
    const double e2 = std::exp(2.0);
    std::vector<double> lb, llb, ln;
    for (const auto& [b, count] : series.samples) {
        if (b < e2) continue;
        if (count <= 0) throw Error("zero count in fit samples (increase B)");
        lb.push_back(std::log(b));
        llb.push_back(std::log(std::log(b)));
        ln.push_back(std::log(double(count)));
    }
    if (lb.size() < 4) throw Error("need at least 4 samples with B >= e^2");

    FitResult res;
    size_t n = lb.size();
    if (fix_alpha) {
        res.fixed_alpha = true;
        res.alpha = *fix_alpha;
        // fit log N - alpha log B = log C + beta log log B
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < n; ++i) {
            double y = ln[i] - res.alpha * lb[i];
            sx += llb[i];
            sy += y;
            sxx += llb[i] * llb[i];
            sxy += llb[i] * y;
        }
        double denom = double(n) * sxx - sx * sx;
        if (std::abs(denom) < 1e-12) throw Error("singular fit system (samples too degenerate)");
        res.log_exponent = (double(n) * sxy - sx * sy) / denom;
        double logc = (sy - res.log_exponent * sx) / double(n);
        res.constant = std::exp(logc);
        double ss = 0;
        for (size_t i = 0; i < n; ++i) {
            double pred = logc + res.alpha * lb[i] + res.log_exponent * llb[i];
            ss += (ln[i] - pred) * (ln[i] - pred);
        }
        res.residual = std::sqrt(ss / double(n));
        return res;
    }

    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    for (size_t i = 0; i < n; ++i) {
        double row[3] = {1.0, lb[i], llb[i]};
        for (int a = 0; a < 3; ++a) {
            rhs[a] += row[a] * ln[i];
            for (int b = 0; b < 3; ++b) m[a][b] += row[a] * row[b];
        }
    }
    std::vector<double> sol = solve3(m, rhs);
    res.constant = std::exp(sol[0]);
    res.alpha = sol[1];
    res.log_exponent = sol[2];
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        double pred = sol[0] + sol[1] * lb[i] + sol[2] * llb[i];
        ss += (ln[i] - pred) * (ln[i] - pred);
    }
    res.residual = std::sqrt(ss / double(n));
    return res;
}

}  // namespace stacky
