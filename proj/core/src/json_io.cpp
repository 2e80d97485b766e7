#include "cmv/json_io.hpp"

#include <fstream>

namespace cmv {

json to_json(const ComplexMatrix& a) {
    json out = json::array();
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.push_back(json::array({a(i, j).real(), a(i, j).imag()}));
    return out;
}

ComplexMatrix matrix_from_json(const json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows * cols)
        fail(errc::bad_config, "matrix JSON has wrong length");
    ComplexMatrix a(rows, cols);
    int idx = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const json& e = j.at(idx++);
            a(r, c) = complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    return a;
}

json to_json(const VerblunskyData& data) {
    json alphas = json::array();
    for (int k = data.k_min(); k <= data.k_max(); ++k) alphas.push_back(to_json(data.alpha(k)));
    return json{{"m", data.m()}, {"k_min", data.k_min()}, {"alphas", alphas}};
}

VerblunskyData verblunsky_from_json(const json& j) {
    const int m = j.at("m").get<int>();
    const int k_min = j.at("k_min").get<int>();
    const json& alphas = j.at("alphas");
    std::map<int, ComplexMatrix> window;
    int k = k_min;
    for (const auto& a : alphas) window.emplace(k++, matrix_from_json(a, m, m));
    return derive(window);
}

json to_json(const SpectralMeasure& mu) {
    json atoms = json::array();
    for (const auto& a : mu.atoms)
        atoms.push_back(json{{"node", json::array({a.node.real(), a.node.imag()})},
                             {"weight", to_json(a.weight)}});
    return json{{"m", mu.m}, {"atoms", atoms}};
}

SpectralMeasure measure_from_json(const json& j) {
    SpectralMeasure mu;
    mu.m = j.at("m").get<int>();
    for (const auto& a : j.at("atoms")) {
        const json& n = a.at("node");
        mu.atoms.push_back({complex(n.at(0).get<double>(), n.at(1).get<double>()),
                            matrix_from_json(a.at("weight"), mu.m, mu.m)});
    }
    return mu;
}

json to_json(const MatrixPowerSeries& s) {
    json coeffs = json::array();
    for (int j = 0; j <= s.order(); ++j) coeffs.push_back(to_json(s.coeff(j)));
    return json{{"m", s.m()}, {"N", s.order()}, {"coeffs", coeffs}};
}

MatrixPowerSeries series_from_json(const json& j) {
    const int m = j.at("m").get<int>();
    const int n = j.at("N").get<int>();
    MatrixPowerSeries s(m, n);
    const json& coeffs = j.at("coeffs");
    for (int i = 0; i <= n; ++i) s.coeff(i) = matrix_from_json(coeffs.at(i), m, m);
    return s;
}

json to_json(const MatrixLaurentPolynomial& p) {
    json out = json::array();
    for (const auto& [e, c] : p.coeffs())
        out.push_back(json{{"exponent", e}, {"matrix", to_json(c)}});
    return out;
}

MatrixLaurentPolynomial laurent_from_json(const json& j, int m) {
    MatrixLaurentPolynomial p(m);
    for (const auto& term : j)
        p.set_coeff(term.at("exponent").get<int>(), matrix_from_json(term.at("matrix"), m, m));
    return p;
}

json to_json(const GreensData& gd) {
    return json{{"k0", gd.k0}, {"g", to_json(gd.g)}, {"h", to_json(gd.h)}};
}

GreensData greens_from_json(const json& j) {
    GreensData gd;
    gd.k0 = j.at("k0").get<int>();
    gd.g = series_from_json(j.at("g"));
    gd.h = series_from_json(j.at("h"));
    return gd;
}

json to_json(const ReconstructionReport& rep) {
    json recovered = json::object();
    for (const auto& [k, v] : rep.recovered) recovered[std::to_string(k)] = to_json(v);
    json errors = json::object();
    for (const auto& [k, e] : rep.per_site_error) errors[std::to_string(k)] = e;
    return json{{"recovered", recovered},
                {"per_site_error", errors},
                {"guaranteed_window", json::array({rep.window_lo, rep.window_hi})},
                {"route", rep.route}};
}

json error_to_json(const error& e) {
    return json{{"error", json{{"code", errc_name(e.code())}, {"message", e.what()}}}};
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail(errc::bad_config, "cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::bad_config, "cannot open for reading: " + path);
    json j;
    in >> j;
    return j;
}

} // namespace cmv
