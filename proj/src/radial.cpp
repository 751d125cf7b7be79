#include "hhlab/radial.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "hhlab/errors.hpp"
#include "hhlab/regimes.hpp"

namespace hh {

RadialGrid::RadialGrid(int dim, std::vector<double> edges, double ratio)
    : dim_(dim), ratio_(ratio), edges_(std::move(edges)) {
    const std::size_t n = edges_.size() - 1;
    const double wn = unit_ball_volume(dim_);
    centers_.resize(n);
    volumes_.resize(n);
    trans_.assign(n, 0.0);
    min_dr_ = edges_[1] - edges_[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double a = edges_[i], b = edges_[i + 1];
        centers_[i] = 0.5 * (a + b);
        volumes_[i] = wn * (std::pow(b, dim_) - std::pow(a, dim_));
        min_dr_ = std::min(min_dr_, b - a);
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double area = dim_ * wn * std::pow(edges_[i], dim_ - 1);
        trans_[i] = area / (centers_[i] - centers_[i - 1]);
    }
}

GridPtr RadialGrid::from_edges(int dim, std::vector<double> edges) {
    if (dim < 1) throw OutOfRange("dim");
    if (edges.size() < 3 || edges.front() != 0.0) throw OutOfRange("edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1])) throw OutOfRange("edges");
    return GridPtr(new RadialGrid(dim, std::move(edges), 1.0));
}

GridPtr RadialGrid::uniform(int dim, double r_max, std::size_t cells) {
    if (dim < 1) throw OutOfRange("dim");
    if (!(r_max > 0)) throw OutOfRange("r_max");
    if (cells < 2) throw OutOfRange("cells");
    std::vector<double> e(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) e[i] = r_max * double(i) / double(cells);
    e.back() = r_max;
    return GridPtr(new RadialGrid(dim, std::move(e), 1.0));
}

GridPtr RadialGrid::graded(int dim, double r_max, std::size_t cells, double ratio) {
    if (!(ratio >= 1.0)) throw OutOfRange("ratio");
    if (ratio == 1.0) return uniform(dim, r_max, cells);
    if (dim < 1) throw OutOfRange("dim");
    if (!(r_max > 0)) throw OutOfRange("r_max");
    if (cells < 2) throw OutOfRange("cells");
    const double h0 = r_max * (ratio - 1) / (std::pow(ratio, double(cells)) - 1);
    std::vector<double> e(cells + 1, 0.0);
    double h = h0;
    for (std::size_t i = 1; i <= cells; ++i) {
        e[i] = e[i - 1] + h;
        h *= ratio;
    }
    e.back() = r_max;
    auto g = std::shared_ptr<RadialGrid>(new RadialGrid(dim, std::move(e), ratio));
    return g;
}

std::vector<double> RadialGrid::singular_weights(double s) const {
    if (!(s > -dim_)) throw WeightNotIntegrable("weight exponent must exceed -N");
    const double wn = unit_ball_volume(dim_);
    const double k = dim_ + s;
    std::vector<double> w(size());
    for (std::size_t i = 0; i < size(); ++i)
        w[i] = dim_ * wn * (std::pow(edges_[i + 1], k) - std::pow(edges_[i], k)) / k;
    return w;
}

std::vector<double> RadialGrid::regularized_weights(double s, double eta) const {
    if (eta == 0.0) {
        auto w = singular_weights(s);
        for (std::size_t i = 0; i < size(); ++i) w[i] /= volumes_[i];
        return w;
    }
    const double wn = unit_ball_volume(dim_);
    const int n = dim_;
    std::vector<double> w(size());
    for (std::size_t i = 0; i < size(); ++i) {
        auto f = [&](double r) { return std::pow(r, n - 1) * std::pow(r * r + eta * eta, s / 2); };
        const double I = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, edges_[i], edges_[i + 1], 12, 1e-13);
        w[i] = n * wn * I / volumes_[i];
    }
    return w;
}

double RadialGrid::grad_sq(const std::vector<double>& g) const {
    double acc = 0;
    for (std::size_t i = 1; i < size(); ++i) {
        const double d = g[i] - g[i - 1];
        acc += trans_[i] * d * d;
    }
    return acc;
}

void RadialGrid::laplacian(const std::vector<double>& g, std::vector<double>& out) const {
    const std::size_t n = size();
    out.assign(n, 0.0);
    double left = 0.0;  // flux through the inner edge of the current cell
    for (std::size_t i = 0; i < n; ++i) {
        const double right = (i + 1 < n) ? trans_[i + 1] * (g[i + 1] - g[i]) : 0.0;
        out[i] = (right - left) / volumes_[i];
        left = right;
    }
}

std::string RadialGrid::describe() const {
    return fmt::format("dim={} r_max={:.17g} cells={} ratio={:.17g}", dim_, r_max(), size(),
                       ratio_);
}

RadialField::RadialField(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->size()) throw OutOfRange("values");
}

double RadialField::l1() const {
    double acc = 0;
    const auto& vol = grid->volumes();
    for (std::size_t i = 0; i < size(); ++i) acc += vol[i] * std::abs(values[i]);
    return acc;
}

double RadialField::lq(double q) const {
    double acc = 0;
    const auto& vol = grid->volumes();
    for (std::size_t i = 0; i < size(); ++i) acc += vol[i] * ipow(std::abs(values[i]), q);
    return std::pow(acc, 1.0 / q);
}

double RadialField::linf() const {
    double m = 0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

bool RadialField::nonnegative() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return v >= 0; });
}

double RadialField::support_radius(double floor) const {
    for (std::size_t i = size(); i-- > 0;)
        if (values[i] > floor) return grid->edges()[i + 1];
    return 0.0;
}

RadialField laplacian_of_power(const RadialField& f, double m) {
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = ipow(f.values[i], m);
    RadialField out(f.grid);
    f.grid->laplacian(g, out.values);
    return out;
}

double weighted_integral(const RadialField& f, double q, double s) {
    if (!(q > 0)) throw OutOfRange("q");
    const auto w = f.grid->singular_weights(s);
    double acc = 0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += w[i] * ipow(f.values[i], q);
    return acc;
}

void write_field(std::ostream& os, const RadialField& f, const std::string& config_hash) {
    os << "# radial-field " << f.grid->describe() << " config_hash=" << config_hash << "\n";
    const auto& c = f.grid->centers();
    for (std::size_t i = 0; i < f.size(); ++i)
        os << fmt::format("{:.17g},{:.17g}\n", c[i], f.values[i]);
}

RadialField read_field(std::istream& is, std::string* config_hash) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# radial-field", 0) != 0)
        throw ConfigError("field", "missing radial-field header");
    std::istringstream hs(header.substr(15));
    int dim = 0;
    double r_max = 0, ratio = 1;
    std::size_t cells = 0;
    std::string tok;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
        if (k == "dim") dim = std::stoi(v);
        else if (k == "r_max") r_max = std::stod(v);
        else if (k == "cells") cells = std::stoul(v);
        else if (k == "ratio") ratio = std::stod(v);
        else if (k == "config_hash" && config_hash) *config_hash = v;
    }
    auto grid = RadialGrid::graded(dim, r_max, cells, ratio);
    RadialField f(grid);
    std::string line;
    std::size_t i = 0;
    while (std::getline(is, line) && i < cells) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        f.values[i++] = std::stod(line.substr(comma + 1));
    }
    if (i != cells) throw ConfigError("field", "row count mismatch");
    return f;
}

}  // namespace hh
