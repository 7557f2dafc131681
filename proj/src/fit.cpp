#include "nhqfi/fit.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace nhqfi::fit {

double LinearFit::slope_ci_halfwidth(double confidence) const
{
    if (n <= 2) return INFINITY;
    const boost::math::students_t dist(n - 2);
    return boost::math::quantile(boost::math::complement(dist, (1 - confidence) / 2)) * slope_se;
}

LinearFit linear(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::invalid_argument, "linear fit needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw Error(ErrorKind::invalid_argument, "linear fit needs distinct abscissae");
    LinearFit f;
    f.n = static_cast<int>(x.size());
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.slope * x[i] - f.intercept;
        rss += r * r;
    }
    f.r2 = syy > 0 ? 1 - rss / syy : 1.0;
    if (f.n > 2) {
        const double s2 = rss / (n - 2);
        f.slope_se = std::sqrt(s2 / sxx);
        f.intercept_se = std::sqrt(s2 * (1 / n + mx * mx / sxx));
    }
    return f;
}

LinearFit power_law(const std::vector<double>& x, const std::vector<double>& y)
{
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) throw Error(ErrorKind::invalid_argument, "power-law fit needs positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return linear(lx, ly);
}

namespace {

struct Functor {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const std::function<double(double, const RVec&)>* model;
    const std::vector<double>* x;
    const std::vector<double>* y;
    int np;

    int inputs() const { return np; }
    int values() const { return static_cast<int>(x->size()); }
    int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const
    {
        for (std::size_t i = 0; i < x->size(); ++i) r(i) = (*model)((*x)[i], p) - (*y)[i];
        return 0;
    }
};

}  // namespace

NonlinearFit least_squares(const std::function<double(double, const RVec&)>& model, const std::vector<double>& x,
                           const std::vector<double>& y, const RVec& start)
{
    if (x.size() != y.size() || x.size() < static_cast<std::size_t>(start.size()))
        throw Error(ErrorKind::invalid_argument, "least squares needs at least as many points as parameters");
    Functor f{&model, &x, &y, static_cast<int>(start.size())};
    Eigen::NumericalDiff<Functor> nd(f);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Functor>> lm(nd);
    lm.parameters.maxfev = 4000;
    lm.parameters.xtol = 1e-12;
    lm.parameters.ftol = 1e-12;
    NonlinearFit out;
    out.params = start;
    const auto status = lm.minimize(out.params);
    out.iterations = static_cast<int>(lm.nfev);
    out.converged = status == Eigen::LevenbergMarquardtSpace::RelativeReductionTooSmall ||
                    status == Eigen::LevenbergMarquardtSpace::RelativeErrorTooSmall ||
                    status == Eigen::LevenbergMarquardtSpace::RelativeErrorAndReductionTooSmall ||
                    status == Eigen::LevenbergMarquardtSpace::CosinusTooSmall;
    Eigen::VectorXd r(x.size());
    f(out.params, r);
    out.rss = r.squaredNorm();
    return out;
}

}  // namespace nhqfi::fit
