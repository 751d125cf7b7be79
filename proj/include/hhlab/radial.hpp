#pragma once

#include <cmath>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace hh {

// Cell-centred radial grid on [0, r_max]. Edge 0 sits at the origin.
class RadialGrid {
public:
    static std::shared_ptr<const RadialGrid> uniform(int dim, double r_max, std::size_t cells);
    // Cell widths grow geometrically by `ratio` away from the origin.
    static std::shared_ptr<const RadialGrid> graded(int dim, double r_max, std::size_t cells,
                                                    double ratio);
    static std::shared_ptr<const RadialGrid> from_edges(int dim, std::vector<double> edges);

    int dim() const { return dim_; }
    double r_max() const { return edges_.back(); }
    std::size_t size() const { return centers_.size(); }
    double ratio() const { return ratio_; }

    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& centers() const { return centers_; }
    // |cell| in R^N
    const std::vector<double>& volumes() const { return volumes_; }
    // area(edge i) / distance between the centres it separates; index 0 unused
    const std::vector<double>& transmissibility() const { return trans_; }
    double min_spacing() const { return min_dr_; }

    // int_cell |x|^s dx for every cell, closed form.
    std::vector<double> singular_weights(double s) const;
    // Cell averages of (|x|^2 + eta^2)^(s/2), by Gauss quadrature in r^(N-1) dr.
    std::vector<double> regularized_weights(double s, double eta) const;

    // Sum over interior edges of area * (jump of g)^2 / spacing: the discrete
    // ||grad g||_2^2 consistent with laplacian().
    double grad_sq(const std::vector<double>& g) const;
    // Finite-volume divergence of grad g, zero flux at both ends.
    void laplacian(const std::vector<double>& g, std::vector<double>& out) const;

    std::string describe() const;

private:
    RadialGrid(int dim, std::vector<double> edges, double ratio);
    int dim_;
    double ratio_;
    std::vector<double> edges_, centers_, volumes_, trans_;
    double min_dr_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// A radial function sampled at cell centres. State fields are non-negative;
// derived fields (Laplacians, residuals) may carry either sign.
struct RadialField {
    GridPtr grid;
    std::vector<double> values;

    RadialField() = default;
    explicit RadialField(GridPtr g) : grid(std::move(g)), values(grid->size(), 0.0) {}
    RadialField(GridPtr g, std::vector<double> v);

    std::size_t size() const { return values.size(); }
    double l1() const;
    double lq(double q) const;
    double linf() const;
    bool nonnegative() const;
    // outermost radius where the value exceeds `floor`; 0 if none
    double support_radius(double floor = 0.0) const;
};

RadialField laplacian_of_power(const RadialField& f, double m);
double weighted_integral(const RadialField& f, double q, double s);

// x^e with fast paths for the exponents that dominate run time.
inline double ipow(double x, double e) {
    if (e == 2.0) return x * x;
    if (e == 1.0) return x;
    if (e == 3.0) return x * x * x;
    return x > 0 ? std::pow(x, e) : 0.0;
}

void write_field(std::ostream& os, const RadialField& f, const std::string& config_hash);
RadialField read_field(std::istream& is, std::string* config_hash = nullptr);

}  // namespace hh
