#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

namespace sloshspot::quad {

// 15-point Gauss-Kronrod rule on [-1, 1] with the embedded 7-point Gauss rule
// supplying the error estimate.  Nodes are symmetric; only the non-negative
// half is tabulated.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr double kGK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

// Weights of the embedded Gauss rule, attached to kGK15Nodes[1], [3], [5], [7].
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    std::size_t seq = 0;  // creation order; deterministic heap tie-break
};

struct PanelWorse {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.seq > rhs.seq;
    }
};

struct Result {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    int panels = 0;
    bool converged = false;
};

template <class F>
Panel gk15(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    std::complex<double> kron{0.0, 0.0};
    std::complex<double> gauss{0.0, 0.0};
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kGK15Nodes[i];
        std::complex<double> s = f(mid - dx);
        if (i != 7) s += f(mid + dx);
        kron += kGK15Weights[i] * s;
        if (i % 2 == 1) gauss += kG7Weights[i / 2] * s;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = half * kron;
    p.error = std::abs(half * (kron - gauss));
    return p;
}

// Globally adaptive integration over the union of [breakpoints[i],
// breakpoints[i+1]]: worst panel first, until the summed error estimate drops
// below max(abs_tol, rel_tol*|value|) or the panel budget runs out.
template <class F>
Result integrate(F&& f, const std::vector<double>& breakpoints, double abs_tol,
                 double rel_tol, int max_panels) {
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    std::complex<double> total{0.0, 0.0};
    double total_err = 0.0;
    std::size_t seq = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1])) continue;
        Panel p = gk15(f, breakpoints[i], breakpoints[i + 1]);
        p.seq = seq++;
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    Result r;
    while (true) {
        r.panels = static_cast<int>(seq);
        const double goal = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= goal || heap.empty()) {
            r.converged = total_err <= goal;
            break;
        }
        if (static_cast<int>(seq) >= max_panels) {
            r.converged = false;
            break;
        }
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        // Bisection at machine granularity: the error estimate is stuck.
        if (!(worst.a < mid && mid < worst.b)) break;
        heap.pop();
        total -= worst.value;
        total_err -= worst.error;
        for (Panel half : {gk15(f, worst.a, mid), gk15(f, mid, worst.b)}) {
            half.seq = seq++;
            total += half.value;
            total_err += half.error;
            heap.push(half);
        }
    }
    r.value = total;
    r.error = total_err;
    return r;
}

}  // namespace sloshspot::quad
