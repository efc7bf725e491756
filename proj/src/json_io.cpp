#include "nlew/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace nlew {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    for (int prec = 12; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) break;
    }
    return buf;
}

namespace {

Json nan_safe(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> re, im;
    re.reserve(m.size());
    im.reserve(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            re.push_back(m(i, k).real());
            im.push_back(m(i, k).imag());
        }
    j["re"] = re;
    j["im"] = im;
    return j;
}

Matrix matrix_from_json(const Json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != static_cast<std::size_t>(rows * cols) || im.size() != re.size())
        throw std::invalid_argument("matrix json: entry count mismatch");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = Complex(re[i * cols + k], im[i * cols + k]);
    return m;
}

static Json ranges_json(const std::vector<ParamRange>& params) {
    Json arr = Json::array();
    for (const auto& r : params)
        arr.push_back({{"name", r.name},
                       {"lo", r.lo},
                       {"hi", r.hi},
                       {"lo_exclusive", r.lo_exclusive}});
    return arr;
}

Json state_registry_json() {
    Json arr = Json::array();
    for (const auto& f : family_registry())
        arr.push_back({{"id", f.id},
                       {"d1", f.dims.d1},
                       {"d2", f.dims.d2},
                       {"params", ranges_json(f.params)},
                       {"description", f.description}});
    return arr;
}

Json witness_registry_json() {
    Json arr = Json::array();
    for (const auto& w : witness_registry())
        arr.push_back({{"id", w.id},
                       {"d1", w.dims.d1},
                       {"d2", w.dims.d2},
                       {"params", ranges_json(w.params)},
                       {"description", w.description}});
    return arr;
}

Json evaluation_to_json(const NlewEvaluation& e) {
    return {{"kind", to_string(e.kind)},
            {"d1", e.dims.d1},
            {"d2", e.dims.d2},
            {"value", e.value},
            {"k", nan_safe(e.k)},
            {"det_marginal", nan_safe(e.det_marginal)},
            {"det_full", nan_safe(e.det_full)},
            {"tr_wl", nan_safe(e.tr_wl)},
            {"tr_wl2", nan_safe(e.tr_wl2)},
            {"lmax_rho", nan_safe(e.lmax_rho)},
            {"lmax_wl", nan_safe(e.lmax_wl)},
            {"h1", nan_safe(e.h1)},
            {"h2", nan_safe(e.h2)},
            {"sep_max", nan_safe(e.sep_max)},
            {"psd_term", nan_safe(e.psd_term)},
            {"lmin_psd_op", nan_safe(e.lmin_psd_op)},
            {"asymmetry", nan_safe(e.asymmetry)},
            {"witness_valid", e.witness_valid}};
}

Json certification_to_json(const CertificationReport& r) {
    Json detected = Json::array();
    for (const auto& d : r.detected)
        detected.push_back(
            {{"family", d.family}, {"params", d.params}, {"expectation", d.expectation}});
    return {{"family", r.family},
            {"params", r.params},
            {"samples", r.samples},
            {"seed", r.seed},
            {"min_expectation", r.min_expectation},
            {"lambda_min", r.lambda_min},
            {"has_negative_eigenvalue", r.has_negative_eigenvalue},
            {"suspect", r.suspect},
            {"detected", detected}};
}

Json sepmax_to_json(const SepMaxResult& r) {
    std::vector<double> are, aim, bre, bim;
    for (Eigen::Index i = 0; i < r.argmax_a.size(); ++i) {
        are.push_back(r.argmax_a(i).real());
        aim.push_back(r.argmax_a(i).imag());
    }
    for (Eigen::Index i = 0; i < r.argmax_b.size(); ++i) {
        bre.push_back(r.argmax_b(i).real());
        bim.push_back(r.argmax_b(i).imag());
    }
    return {{"max_value", r.max_value},
            {"restarts_used", r.restarts_used},
            {"converged", r.converged},
            {"argmax_a", {{"re", are}, {"im", aim}}},
            {"argmax_b", {{"re", bre}, {"im", bim}}},
            {"restart_values", r.restart_values}};
}

Json decomposition_to_json(const DecompositionResult& d) {
    Json coeffs = Json::array();
    for (Eigen::Index a = 0; a < d.coeffs.rows(); ++a)
        for (Eigen::Index b = 0; b < d.coeffs.cols(); ++b)
            coeffs.push_back({{"basis_a", d.labels_a[a]},
                              {"basis_b", d.labels_b[b]},
                              {"coefficient", d.coeffs(a, b)}});
    return {{"d1", d.dims.d1},
            {"d2", d.dims.d2},
            {"residual", d.residual},
            {"coefficients", coeffs}};
}

std::string decomposition_to_csv(const DecompositionResult& d) {
    std::ostringstream out;
    out << "basis_a,basis_b,coefficient\n";
    for (Eigen::Index a = 0; a < d.coeffs.rows(); ++a)
        for (Eigen::Index b = 0; b < d.coeffs.cols(); ++b)
            out << d.labels_a[a] << ',' << d.labels_b[b] << ','
                << format_double(d.coeffs(a, b)) << '\n';
    return out.str();
}

}  // namespace nlew
