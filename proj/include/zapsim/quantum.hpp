#ifndef ZAPSIM_QUANTUM_HPP
#define ZAPSIM_QUANTUM_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace zapsim
{

/// rho = eta |1><1| + (1 - eta) |0><0| in the LO-defined mode.
class HeraldedState
{
public:
    explicit HeraldedState(double eta);
    double eta() const noexcept { return eta_; }

private:
    double eta_;
};

// Quadratures use x = (a + a^dagger)/sqrt(2): vacuum variance 1/2.
inline constexpr const char* kQuadratureConvention = "x=(a+a^dag)/sqrt(2), vacuum variance 1/2";

struct QuadratureSample
{
    std::vector<double> values;
    std::uint64_t seed = 0;
    std::string convention = kQuadratureConvention;
};

/// Phase-averaged quadrature density eta |psi1(x)|^2 + (1 - eta) |psi0(x)|^2.
double quadrature_pdf(const HeraldedState& s, double x);

/// Closed-form cumulative distribution of quadrature_pdf.
double quadrature_cdf(const HeraldedState& s, double x);

/// n i.i.d. draws by inverse-CDF lookup on 2^14 nodes over [-6, 6] with
/// linear interpolation. Deterministic for a given seed on every platform:
/// uniforms come from the top 53 bits of std::mt19937_64.
QuadratureSample sample_quadratures(const HeraldedState& s, std::size_t n, std::uint64_t seed);

struct EtaEstimate
{
    double eta = 0.0;
    double standard_error = 0.0;
    bool clamped = false;  // raw moment fell outside [0, 1]
    double raw = 0.0;
};

/// Moment estimator eta = <x^2> - 1/2 with standard error sd(x^2)/sqrt(n).
EtaEstimate estimate_eta(std::span<const double> values);
EtaEstimate estimate_eta(const QuadratureSample& q);

/// W = (1 - eta) W0 + eta W1 with W0 = e^{-r^2}/pi, W1 = (2 r^2 - 1) e^{-r^2}/pi.
double wigner(const HeraldedState& s, double x, double p);

/// n_side x n_side samples on [-half_width, half_width]^2, row-major with p
/// varying slowest: values[i_p * n_side + i_x].
struct WignerGrid
{
    double half_width = 0.0;
    std::size_t n_side = 0;
    std::vector<double> values;

    double coordinate(std::size_t i) const;
    double at(std::size_t i_x, std::size_t i_p) const { return values[i_p * n_side + i_x]; }
};

WignerGrid wigner_grid(const HeraldedState& s, double half_width, std::size_t n_side);

/// True iff eta > 1/2, i.e. W(0, 0) < 0.
bool is_nonclassical(const HeraldedState& s);

} // namespace zapsim

#endif // ZAPSIM_QUANTUM_HPP
