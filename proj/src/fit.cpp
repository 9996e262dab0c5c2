#include "brickwall/fit.hpp"

#include <cmath>
#include <functional>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>

#include "brickwall/core.hpp"

namespace brickwall {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ParameterError("fit: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2) throw ParameterError("fit: at least two points required");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw ParameterError("fit: x values coincide");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        f.sse += r * r;
    }
    return f;
}

namespace {

// g(x) is the model's shape: y = a * exp(b * g(x)).
struct ShapeFunctor {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    Eigen::VectorXd g;
    Eigen::VectorXd y;

    int inputs() const { return 2; }
    int values() const { return static_cast<int>(y.size()); }

    int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& fvec) const {
        fvec = p[0] * (p[1] * g.array()).exp().matrix() - y;
        return 0;
    }
    int df(const Eigen::VectorXd& p, Eigen::MatrixXd& jac) const {
        const Eigen::ArrayXd e = (p[1] * g.array()).exp();
        jac.resize(y.size(), 2);
        jac.col(0) = e.matrix();
        jac.col(1) = (p[0] * g.array() * e).matrix();
        return 0;
    }
};

CurveFit fit_shape(const std::vector<double>& gx, const std::vector<double>& y) {
    if (gx.size() != y.size()) throw ParameterError("fit: x and y differ in length");
    if (y.size() < 3) throw ParameterError("fit: at least three points required");
    // start from the log-space line through the nonzero points
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != 0.0) {
            lx.push_back(gx[i]);
            ly.push_back(std::log(std::abs(y[i])));
        }
    }
    Eigen::VectorXd p(2);
    if (lx.size() >= 2) {
        const LinearFit start = linear_fit(lx, ly);
        double s = 0.0;
        for (double v : y) s += v;
        p << (s < 0 ? -1.0 : 1.0) * std::exp(start.intercept), start.slope;
    } else {
        p << 0.0, 0.0;
    }
    ShapeFunctor fn;
    fn.g = Eigen::Map<const Eigen::VectorXd>(gx.data(), gx.size());
    fn.y = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
    Eigen::LevenbergMarquardt<ShapeFunctor> lm(fn);
    lm.parameters.maxfev = 2000;
    const auto status = lm.minimize(p);
    CurveFit f;
    f.amplitude = p[0];
    f.exponent = p[1];
    Eigen::VectorXd res(y.size());
    fn(p, res);
    f.sse = res.squaredNorm();
    f.converged = status == Eigen::LevenbergMarquardtSpace::RelativeReductionTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::RelativeErrorTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::RelativeErrorAndReductionTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::CosinusTooSmall;
    return f;
}

}  // namespace

CurveFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) throw ParameterError("power-law fit needs x > 0");
        g[i] = std::log(x[i]);
    }
    return fit_shape(g, y);
}

CurveFit fit_exponential(const std::vector<double>& x, const std::vector<double>& y) {
    return fit_shape(x, y);
}

}  // namespace brickwall
