#include "decohere/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace decohere {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

// Mesh sizes beyond this are a parameter error, not a workload.
constexpr std::size_t max_mesh_points = std::size_t{1} << 23;

void check_domain(double omega, const SpectralDensity& d, const char* who) {
    if (!(omega >= d.ir_cutoff && omega <= d.uv_cutoff))
        throw std::domain_error(std::string(who) + ": frequency outside [IR, UV]");
}

// 2 sin^2(N d) cot^2(d/2) near d = 0.
double pole_series(double n, double d) {
    const double n2 = n * n;
    const double d2 = d * d;
    const double c0 = 8.0 * n2;
    const double c2 = -(4.0 / 3.0) * n2 * (1.0 + 2.0 * n2);
    const double c4 = n2 / 30.0 + 4.0 * n2 * n2 / 9.0 + 16.0 * n2 * n2 * n2 / 45.0;
    return c0 + d2 * (c2 + d2 * c4);
}

// Gauss-Kronrod 15-point abscissae and weights; Gauss 7-point weights.
constexpr std::array<double, 8> xgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

struct WorseFirst {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> fv1{};
    std::array<double, 7> fv2{};
    for (int j = 0; j < 3; ++j) {
        const int k = 2 * j + 1;
        const double dx = half * xgk[k];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        fv1[k] = f1;
        fv2[k] = f2;
        resg += wg[j] * (f1 + f2);
        resk += wgk[k] * (f1 + f2);
        resabs += wgk[k] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int k = 2 * j;
        const double dx = half * xgk[k];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        fv1[k] = f1;
        fv2[k] = f2;
        resk += wgk[k] * (f1 + f2);
        resabs += wgk[k] * (std::abs(f1) + std::abs(f2));
    }
    const double mean = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fc - mean);
    for (int k = 0; k < 7; ++k) resasc += wgk[k] * (std::abs(fv1[k] - mean) + std::abs(fv2[k] - mean));

    const double scale = std::abs(half);
    resasc *= scale;
    resabs *= scale;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk * half, err};
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("quadrature: tolerances must be positive");
    if (max_subdivisions < 1) throw std::invalid_argument("quadrature: max_subdivisions must be >= 1");
    if (!(oscillation_resolution > 0.0))
        throw std::invalid_argument("quadrature: oscillation resolution must be positive");
}

double pole_guard_width(long half_cycles) noexcept {
    const double n = static_cast<double>(std::max(half_cycles, 1L));
    return std::min(1e-6 * pi, 1e-2 / n);
}

std::vector<double> singular_points(double interval, double ir, double uv) {
    std::vector<double> out;
    if (!(interval > 0.0)) return out;
    const double first = std::max(0.0, std::floor((ir * interval / pi - 1.0) / 2.0));
    for (double n = first;; n += 1.0) {
        const double w = (2.0 * n + 1.0) * pi / interval;
        if (w >= uv) break;
        if (w > ir) out.push_back(w);
        if (out.size() > max_mesh_points) throw std::invalid_argument("singular_points: too many poles in the band");
    }
    return out;
}

std::vector<double> oscillation_mesh(double total_time, double ir, double uv, double resolution) {
    if (!(ir > 0.0 && uv > ir)) throw std::invalid_argument("oscillation_mesh: need 0 < ir < uv");
    std::vector<double> mesh{ir};
    double step = uv - ir;
    if (total_time > 0.0) {
        step = std::min(step, 2.0 * pi / (resolution * total_time));
    }
    for (double w = 2.0 * ir; w < ir + step && w < uv; w *= 2.0) mesh.push_back(w);

    const double panels = std::ceil((uv - ir) / step);
    if (panels > static_cast<double>(max_mesh_points))
        throw std::invalid_argument("oscillation_mesh: oscillation mesh exceeds size limit");
    const auto count = static_cast<std::size_t>(panels);
    const double h = (uv - ir) / static_cast<double>(count);
    for (std::size_t i = 1; i < count; ++i) mesh.push_back(ir + h * static_cast<double>(i));
    mesh.push_back(uv);
    std::sort(mesh.begin(), mesh.end());
    mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());
    return mesh;
}

std::vector<double> breakpoints(double interval, double total_time, double ir, double uv, double resolution) {
    auto mesh = oscillation_mesh(total_time, ir, uv, resolution);
    const auto poles = singular_points(interval, ir, uv);
    std::vector<double> merged;
    merged.reserve(mesh.size() + poles.size());
    std::merge(mesh.begin(), mesh.end(), poles.begin(), poles.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return merged;
}

double free_integrand(double omega, const BathSpec& bath, double t) {
    check_domain(omega, bath.density, "free_integrand");
    if (t < 0.0) throw std::domain_error("free_integrand: negative time");
    const double s = std::sin(0.5 * omega * t);
    return thermal_factor(bath.temperature, omega) * 2.0 * s * s * density_at(bath.density, omega) / (omega * omega);
}

double regularized_pulsed_integrand(double omega, const BathSpec& bath, const PulseSchedule& sched) {
    check_domain(omega, bath.density, "regularized_pulsed_integrand");
    const double phase = omega * sched.interval();
    const auto n = static_cast<double>(sched.half_cycles());
    const auto pole = nearest_pole(phase);
    double filter;
    if (std::abs(pole.offset) < pole_guard_width(sched.half_cycles())) {
        filter = pole_series(n, pole.offset);
    } else {
        const double s = std::sin(n * phase);
        const double t = std::tan(0.5 * phase);
        filter = 2.0 * s * s * t * t;
    }
    return 4.0 * thermal_factor(bath.temperature, omega) * density_at(bath.density, omega) * filter /
           (omega * omega);
}

double relaxed_pulsed_integrand(double omega, const BathSpec& bath, double interval, double t) {
    check_domain(omega, bath.density, "relaxed_pulsed_integrand");
    const auto tan2 = filter_factor(interval, omega);
    if (!tan2) throw std::domain_error("relaxed_pulsed_integrand: non-removable pole of tan^2");
    const double s = std::sin(0.5 * omega * t);
    return 4.0 * thermal_factor(bath.temperature, omega) * 2.0 * s * s * density_at(bath.density, omega) * *tan2 /
           (omega * omega);
}

IntegralResult integrate(const std::function<double(double)>& f, std::span<const double> partition,
                         const QuadratureConfig& config) {
    config.validate();
    if (partition.size() < 2) throw std::invalid_argument("integrate: partition needs at least two points");

    // Max-heap on error estimate.
    std::vector<Panel> heap;
    heap.reserve(partition.size() + 2 * std::min<std::size_t>(config.max_subdivisions, 1u << 16));
    const WorseFirst worse;
    IntegralResult out;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
        if (!(partition[i + 1] > partition[i])) throw std::invalid_argument("integrate: partition must increase");
        const Panel p = gauss_kronrod(f, partition[i], partition[i + 1]);
        out.evaluations += 15;
        total += p.value;
        total_err += p.error;
        heap.push_back(p);
    }
    std::make_heap(heap.begin(), heap.end(), worse);

    auto tolerance = [&](double v) { return std::max(config.abs_tol, config.rel_tol * std::abs(v)); };

    std::size_t bisections = 0;
    bool stuck = false;
    while (total_err > tolerance(total) && bisections < config.max_subdivisions) {
        const Panel worst = heap.front();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 64.0 * eps * std::abs(mid)) {
            stuck = true;
            break;
        }
        std::pop_heap(heap.begin(), heap.end(), worse);
        heap.pop_back();
        const Panel left = gauss_kronrod(f, worst.a, mid);
        const Panel right = gauss_kronrod(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), worse);
        ++bisections;

        // The running sums drift; resum exactly now and then.
        if (bisections % 512 == 0) {
            total = 0.0;
            total_err = 0.0;
            for (const auto& p : heap) {
                total += p.value;
                total_err += p.error;
            }
        }
    }

    // Final sums in partition order so the result does not depend on heap layout.
    std::vector<Panel>& panels = heap;
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double value = 0.0;
    double compensation = 0.0;
    double err = 0.0;
    for (const auto& p : panels) {
        const double y = p.value - compensation;
        const double t = value + y;
        compensation = (t - value) - y;
        value = t;
        err += p.error;
    }
    out.value = value;
    out.error_estimate = err;
    out.converged = !stuck && err <= tolerance(value);
    return out;
}

IntegralResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureConfig& config) {
    const std::array<double, 2> partition{a, b};
    return integrate(f, partition, config);
}

}  // namespace decohere
