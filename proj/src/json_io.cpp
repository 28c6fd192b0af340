#include "orbithull/json_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace orbithull::json_io {

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return json{{"n", m.rows()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON: expected {\"n\", \"entries\"}");
    const auto n = j.at("n").get<std::size_t>();
    const json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != n)
        throw std::invalid_argument("matrix JSON: row count does not match n");
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = entries.at(i);
        if (!row.is_array() || row.size() != n)
            throw std::invalid_argument("matrix JSON: non-square entries");
        for (std::size_t k = 0; k < n; ++k) {
            const json& e = row.at(k);
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("matrix JSON: entries must be [re, im] pairs");
            const double re = e.at(0).get<double>();
            const double im = e.at(1).get<double>();
            if (!std::isfinite(re) || !std::isfinite(im))
                throw std::invalid_argument("matrix JSON: non-finite entry");
            m(i, k) = cplx(re, im);
        }
    }
    return m;
}

json points_to_json(const std::vector<hilbsep::EuclideanVector>& points) {
    json list = json::array();
    std::size_t dim = points.empty() ? 0 : points.front().size();
    for (const auto& p : points) list.push_back(p);
    return json{{"dim", dim}, {"points", std::move(list)}};
}

std::vector<hilbsep::EuclideanVector> points_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
        throw std::invalid_argument("point set JSON: expected {\"dim\", \"points\"}");
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<hilbsep::EuclideanVector> points;
    for (const json& p : j.at("points")) {
        hilbsep::EuclideanVector v = p.get<hilbsep::EuclideanVector>();
        if (v.size() != dim) throw std::invalid_argument("point set JSON: dimension mismatch");
        for (double x : v)
            if (!std::isfinite(x)) throw std::invalid_argument("point set JSON: non-finite entry");
        points.push_back(std::move(v));
    }
    return points;
}

json certificate_to_json(const majorization::MixingCertificate& cert) {
    json unitaries = json::array();
    for (const auto& u : cert.unitaries) unitaries.push_back(matrix_to_json(u));
    return json{{"weights", cert.weights},
                {"unitaries", std::move(unitaries)},
                {"base", matrix_to_json(cert.base)},
                {"target", matrix_to_json(cert.target)},
                {"residual", cert.residual}};
}

majorization::MixingCertificate certificate_from_json(const json& j) {
    if (!j.is_object() || !j.contains("weights") || !j.contains("unitaries") || !j.contains("base") ||
        !j.contains("target") || !j.contains("residual"))
        throw std::invalid_argument("certificate JSON: missing field");
    majorization::MixingCertificate cert;
    cert.weights = j.at("weights").get<std::vector<double>>();
    for (const json& u : j.at("unitaries"))
        cert.unitaries.push_back(matrix_from_json(u));
    cert.base = matrix_from_json(j.at("base"));
    cert.target = matrix_from_json(j.at("target"));
    cert.residual = j.at("residual").get<double>();
    return cert;
}

json hull_to_json(const orbit::HullCombination& hull) {
    json unitaries = json::array();
    json right = json::array();
    bool twosided = false;
    for (const auto& atom : hull.atoms) {
        unitaries.push_back(matrix_to_json(atom.param_u));
        if (atom.param_v) {
            right.push_back(matrix_to_json(*atom.param_v));
            twosided = true;
        }
    }
    json out{{"weights", hull.weights},
             {"unitaries", std::move(unitaries)},
             {"base", matrix_to_json(hull.base)},
             {"target", matrix_to_json(hull.target)},
             {"residual", hull.residual}};
    if (twosided) out["right_unitaries"] = std::move(right);
    return out;
}

json verdict_to_json(const orbit::MembershipVerdict& verdict) {
    const char* status = "undecided";
    if (verdict.status == orbit::MembershipStatus::Inside) status = "inside";
    if (verdict.status == orbit::MembershipStatus::Outside) status = "outside";
    json out{{"status", status},
             {"distance", verdict.distance_estimate},
             {"margin", nullptr},
             {"certificate", nullptr},
             {"witness", nullptr},
             {"lmo_exact", verdict.lmo_exact},
             {"iterations", verdict.iterations}};
    if (verdict.witness) {
        out["margin"] = verdict.witness->margin;
        out["witness"] = matrix_to_json(verdict.witness->direction);
    }
    if (verdict.certificate) out["certificate"] = hull_to_json(*verdict.certificate);
    return out;
}

json duel_to_json(const metric::DuelOutcome& outcome) {
    json out{{"success", outcome.success},
             {"certified", outcome.certified},
             {"lhs", outcome.lhs},
             {"rhs", outcome.rhs},
             {"threshold", outcome.threshold},
             {"support_value", outcome.support_value},
             {"u", nullptr},
             {"weight_faithful", nullptr}};
    if (outcome.u) out["u"] = matrix_to_json(*outcome.u);
    if (outcome.weight_faithful) out["weight_faithful"] = *outcome.weight_faithful;
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("cannot parse " + path + ": " + e.what());
    }
    return j;
}

ComplexMatrix load_matrix(const std::string& path) { return matrix_from_json(load_json_file(path)); }

void write_report(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace orbithull::json_io
