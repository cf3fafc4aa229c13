#include "ncmaj/serialization.hpp"

namespace ncmaj {

json matrix_to_json(const Matrix& a) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            row.push_back({a(i, j).real(), a(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("matrix_from_json: expected nested arrays");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Matrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[i].size()) != cols)
            throw InvalidInput("matrix_from_json: ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& cell = j[i][c];
            if (!cell.is_array() || cell.size() != 2)
                throw InvalidInput("matrix_from_json: entries must be [re, im] pairs");
            a(i, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    if (!all_finite(a)) throw InvalidInput("matrix_from_json: non-finite entries");
    return a;
}

json cube_to_json(const CubeFunction& f) {
    json coeffs = json::array();
    for (const auto& [mask, c] : f.coeffs)
        coeffs.push_back({{"mask", mask}, {"matrix", matrix_to_json(c)}});
    return {{"m", f.m}, {"n", f.n}, {"coeffs", std::move(coeffs)}};
}

CubeFunction cube_from_json(const json& j) {
    CubeFunction f(j.at("m").get<int>(), j.at("n").get<int>());
    for (const auto& entry : j.at("coeffs"))
        f.set_coeff(entry.at("mask").get<std::uint32_t>(),
                    matrix_from_json(entry.at("matrix")));
    return f;
}

json ncpoly_to_json(const NCPoly& q) {
    json coeffs = json::array();
    for (const auto& [mask, c] : q.coeffs)
        coeffs.push_back({{"mask", mask}, {"matrix", matrix_to_json(c)}});
    return {{"m", q.m},
            {"n", q.n_coeff},
            {"n_var", q.n_var},
            {"embedded", q.embedded},
            {"coeffs", std::move(coeffs)}};
}

NCPoly ncpoly_from_json(const json& j) {
    NCPoly q(j.at("m").get<int>(), j.at("n").get<int>());
    for (const auto& entry : j.at("coeffs"))
        q.set_coeff(entry.at("mask").get<std::uint32_t>(),
                    matrix_from_json(entry.at("matrix")));
    if (j.contains("n_var")) {
        const int n_var = j.at("n_var").get<int>();
        if (n_var != q.n_coeff) q = embed(q, n_var);
    }
    return q;
}

json tensor4_to_json(const Tensor4& t) {
    json out = {{"n", t.n}};
    if (t.psd_factors) {
        json factors = json::array();
        for (const auto& f : *t.psd_factors) factors.push_back(matrix_to_json(f));
        out["factors"] = std::move(factors);
    } else {
        out["matrix"] = matrix_to_json(t.matrix);
    }
    return out;
}

Tensor4 tensor4_from_json(const json& j) {
    if (j.contains("factors")) {
        std::vector<Matrix> factors;
        for (const auto& f : j.at("factors")) factors.push_back(matrix_from_json(f));
        if (factors.empty()) return zero_psd_tensor(j.at("n").get<int>());
        return Tensor4::from_factors(std::move(factors));
    }
    return Tensor4::from_matrix(matrix_from_json(j.at("matrix")));
}

json ensemble_to_json(const EnsembleSpec& s) {
    json out = {{"kind", s.kind_name()}, {"dim", s.dim}};
    if (s.kind == EnsembleSpec::Kind::GaussianFrame) {
        json frame = json::array();
        for (const auto& v : s.frame) frame.push_back(matrix_to_json(v));
        out["frame"] = std::move(frame);
    }
    if (s.inner) out["inner"] = ensemble_to_json(*s.inner);
    return out;
}

EnsembleSpec ensemble_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rademacher") return EnsembleSpec::rademacher();
    if (kind == "haar_unitary") return EnsembleSpec::haar_unitary(j.at("dim").get<int>());
    if (kind == "wigner_gue") return EnsembleSpec::wigner_gue(j.at("dim").get<int>());
    if (kind == "gaussian_frame") {
        std::vector<Matrix> frame;
        for (const auto& v : j.at("frame")) frame.push_back(matrix_from_json(v));
        return EnsembleSpec::gaussian_frame(std::move(frame));
    }
    if (kind == "embed_rotate")
        return EnsembleSpec::embed_rotate(ensemble_from_json(j.at("inner")),
                                          j.at("dim").get<int>());
    throw InvalidInput("ensemble_from_json: unknown kind " + kind);
}

json estimate_to_json(const MCEstimate& est) {
    return {{"label", est.label},
            {"mean", est.mean},
            {"stderr", est.stderr_},
            {"samples", est.samples},
            {"seed", est.master_seed}};
}

json report_results_block(const ExperimentReport& rep) {
    json results = json::array();
    for (const auto& v : rep.values) {
        json entry = {{"label", v.label}, {"value", v.value}, {"provenance", v.provenance}};
        if (v.stderr_) entry["stderr"] = *v.stderr_;
        results.push_back(std::move(entry));
    }
    return results;
}

json report_to_json(const ExperimentReport& rep) {
    return {{"experiment", rep.name},
            {"config", rep.config},
            {"seed", rep.seed},
            {"results", report_results_block(rep)},
            {"verdict", verdict_name(rep.verdict)},
            {"notes", rep.notes},
            {"timings", {{"wall_ms", rep.wall_ms}, {"workers", rep.workers}}}};
}

}  // namespace ncmaj
