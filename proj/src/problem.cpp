#include "feaskit/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <json.hpp>

#include "feaskit/rng.hpp"

namespace feaskit {

Ellipsoid::Ellipsoid(Eigen::MatrixXd A, Vector b, double c)
    : A_(std::move(A)), b_(std::move(b)), c_(c) {
    const auto n = A_.rows();
    if (n < 1 || A_.cols() != n) throw InvalidParams("ellipsoid: A must be square and nonempty");
    if (b_.size() != n) throw DimensionMismatch("ellipsoid: b does not match A");
    const double scale = std::max(1.0, A_.cwiseAbs().maxCoeff());
    const double asym = (A_ - A_.transpose()).cwiseAbs().maxCoeff();
    if (!(asym <= 1e-12 * scale)) throw InvalidParams("ellipsoid: A is not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(A_);
    if (llt.info() != Eigen::Success) throw InvalidParams("ellipsoid: A is not positive definite");
    if (!(c_ > 0.0)) throw InvalidParams("ellipsoid: c must be a positive scalar");
}

double Ellipsoid::value(const Vector& x) const {
    if (x.size() != A_.rows()) throw DimensionMismatch("ellipsoid value: wrong point dimension");
    return x.dot(A_ * x) + 2.0 * x.dot(b_) - c_;
}

Vector Ellipsoid::subgradient(const Vector& x) const {
    if (x.size() != A_.rows()) throw DimensionMismatch("ellipsoid subgradient: wrong point dimension");
    return 2.0 * (A_ * x + b_);
}

AffineOracle::AffineOracle(Vector a, double beta) : a_(std::move(a)), beta_(beta) {
    if (a_.size() == 0) throw InvalidParams("affine oracle: empty normal");
}

CfpInstance::CfpInstance(int n, std::vector<OraclePtr> oracles, std::optional<Vector> slater_point,
                         std::string id)
    : n_(n), oracles_(std::move(oracles)), slater_point_(std::move(slater_point)), id_(std::move(id)) {
    if (n_ < 1) throw InvalidParams("instance: dimension must be positive");
    if (oracles_.empty()) throw InvalidParams("instance: needs at least one oracle");
    for (size_t i = 0; i < oracles_.size(); ++i) {
        if (!oracles_[i]) throw InvalidParams("instance: null oracle");
        if (oracles_[i]->dimension() != n_) {
            throw DimensionMismatch("instance: oracle " + std::to_string(i) +
                                    " has dimension " + std::to_string(oracles_[i]->dimension()) +
                                    ", expected " + std::to_string(n_));
        }
    }
    if (slater_point_) {
        if (slater_point_->size() != n_) throw DimensionMismatch("instance: Slater point dimension");
        for (size_t i = 0; i < oracles_.size(); ++i) {
            if (!(oracles_[i]->value(*slater_point_) < 0.0)) {
                throw InvalidParams("instance: claimed Slater point does not strictly satisfy f_" +
                                    std::to_string(i));
            }
        }
    }
}

double CfpInstance::slater_margin() const {
    if (!slater_point_) throw InvalidParams("instance: no Slater point");
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& f : oracles_) margin = std::min(margin, -f->value(*slater_point_));
    return margin;
}

double max_violation(const CfpInstance& inst, const Vector& x) {
    if (x.size() != inst.n()) throw DimensionMismatch("max_violation: wrong point dimension");
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& f : inst.oracles()) worst = std::max(worst, f->value(x));
    return worst;
}

bool is_feasible(const CfpInstance& inst, const Vector& x, double tol) {
    if (tol < 0.0) throw InvalidParams("is_feasible: tol must be >= 0");
    return max_violation(inst, x) <= tol;
}

CfpInstance generate_ellipsoid_instance(int n, int m, std::uint64_t seed, const GenParams& params) {
    if (n < 1 || m < 1) throw InvalidParams("generator: n and m must be >= 1");
    if (!(params.eig_lo > 0.0) || !(params.eig_hi >= params.eig_lo)) {
        throw InvalidParams("generator: need 0 < eig_lo <= eig_hi");
    }
    if (!(params.c_lo > 0.0) || !(params.c_hi >= params.c_lo)) {
        throw InvalidParams("generator: need 0 < c_lo <= c_hi");
    }
    const double b_scale = params.b_scale ? *params.b_scale : 1.0 / std::sqrt(double(n));
    if (b_scale < 0.0) throw InvalidParams("generator: b_scale must be >= 0");

    Xoshiro256pp rng(seed);
    std::vector<OraclePtr> oracles;
    oracles.reserve(static_cast<size_t>(m));

    const double log_lo = std::log(params.eig_lo);
    const double log_hi = std::log(params.eig_hi);

    for (int i = 0; i < m; ++i) {
        Eigen::MatrixXd G(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) G(r, c) = rng.gaussian();

        Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
        Eigen::MatrixXd Q = qr.householderQ();
        const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < n; ++j)
            if (R(j, j) < 0.0) Q.col(j) *= -1.0;

        Vector lambda(n);
        for (int j = 0; j < n; ++j) lambda[j] = std::exp(rng.uniform(log_lo, log_hi));

        Eigen::MatrixXd A = Q.transpose() * lambda.asDiagonal() * Q;
        A = 0.5 * (A + A.transpose());

        Vector b = b_scale * rng.gaussian_vector(n);
        const double c = rng.uniform(params.c_lo, params.c_hi);

        oracles.push_back(std::make_shared<Ellipsoid>(std::move(A), std::move(b), c));
    }

    std::string id = "ell-n" + std::to_string(n) + "-m" + std::to_string(m) + "-s" +
                     std::to_string(seed);
    return CfpInstance(n, std::move(oracles), Vector(Vector::Zero(n)), std::move(id));
}

Vector sample_infeasible_start(const CfpInstance& inst, std::uint64_t seed) {
    if (!inst.slater_point()) throw InvalidParams("sample_infeasible_start: instance has no Slater point");
    Xoshiro256pp rng(seed);
    Vector dir = rng.gaussian_vector(inst.n());
    const double nrm = dir.norm();
    if (nrm == 0.0) {
        dir = Vector::Zero(inst.n());
        dir[0] = 1.0;
    } else {
        dir /= nrm;
    }
    const Vector& anchor = *inst.slater_point();
    double radius = 1.0;
    for (int attempt = 0; attempt <= 60; ++attempt) {
        Vector x = anchor + radius * dir;
        if (max_violation(inst, x) > 0.0) return x;
        radius *= 2.0;
    }
    throw CannotEscape("sample_infeasible_start: no infeasible point within 2^60 radius");
}

namespace {

nlohmann::json vector_to_json(const Vector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Vector json_to_vector(const nlohmann::json& arr, int n, const std::string& field) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != n) {
        throw ParseError(field + ": expected array of " + std::to_string(n) + " numbers");
    }
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        if (!arr[static_cast<size_t>(i)].is_number()) throw ParseError(field + ": non-numeric entry");
        v[i] = arr[static_cast<size_t>(i)].get<double>();
    }
    return v;
}

}  // namespace

std::string write_instance(const CfpInstance& inst) {
    nlohmann::json j;
    j["schema"] = "cfp-ellipsoids-v1";
    j["n"] = inst.n();
    j["m"] = inst.m();
    if (!inst.id().empty()) j["id"] = inst.id();
    if (inst.slater_point()) j["slater_point"] = vector_to_json(*inst.slater_point());

    nlohmann::json ells = nlohmann::json::array();
    for (int i = 0; i < inst.m(); ++i) {
        const auto* ell = dynamic_cast<const Ellipsoid*>(&inst.oracle(i));
        if (!ell) throw InvalidParams("write_instance: only ellipsoid oracles are serializable");
        nlohmann::json e;
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < inst.n(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < inst.n(); ++c) row.push_back(ell->A()(r, c));
            rows.push_back(std::move(row));
        }
        e["A"] = std::move(rows);
        e["b"] = vector_to_json(ell->b());
        e["c"] = ell->c();
        ells.push_back(std::move(e));
    }
    j["ellipsoids"] = std::move(ells);
    return j.dump(2) + "\n";
}

CfpInstance read_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance: invalid JSON: ") + e.what());
    }

    if (!j.is_object()) throw ParseError("instance: top level must be an object");
    if (!j.contains("schema") || j["schema"] != "cfp-ellipsoids-v1") {
        throw ParseError("instance: missing or unsupported schema (want cfp-ellipsoids-v1)");
    }
    if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("instance: missing integer field n");
    if (!j.contains("m") || !j["m"].is_number_integer()) throw ParseError("instance: missing integer field m");
    const int n = j["n"].get<int>();
    const int m = j["m"].get<int>();
    if (n < 1) throw ParseError("instance: n must be >= 1");
    if (m < 1) throw ParseError("instance: m must be >= 1");

    if (!j.contains("ellipsoids") || !j["ellipsoids"].is_array() ||
        static_cast<int>(j["ellipsoids"].size()) != m) {
        throw ParseError("instance: ellipsoids must be an array of m entries");
    }

    std::vector<OraclePtr> oracles;
    oracles.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        const std::string where = "ellipsoids[" + std::to_string(i) + "]";
        const auto& e = j["ellipsoids"][static_cast<size_t>(i)];
        if (!e.is_object() || !e.contains("A") || !e.contains("b") || !e.contains("c")) {
            throw ParseError(where + ": expected object with fields A, b, c");
        }
        const auto& rows = e["A"];
        if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
            throw ParseError(where + ".A: expected " + std::to_string(n) + " rows");
        }
        Eigen::MatrixXd A(n, n);
        for (int r = 0; r < n; ++r) {
            const Vector row = json_to_vector(rows[static_cast<size_t>(r)], n,
                                              where + ".A[" + std::to_string(r) + "]");
            A.row(r) = row.transpose();
        }
        const Vector b = json_to_vector(e["b"], n, where + ".b");
        if (!e["c"].is_number()) throw ParseError(where + ".c: expected a number");
        const double c = e["c"].get<double>();
        try {
            oracles.push_back(std::make_shared<Ellipsoid>(std::move(A), b, c));
        } catch (const Error& err) {
            throw ParseError(where + ": " + err.what());
        }
    }

    std::optional<Vector> slater;
    if (j.contains("slater_point") && !j["slater_point"].is_null()) {
        slater = json_to_vector(j["slater_point"], n, "slater_point");
    }
    std::string id = j.value("id", std::string{});

    try {
        return CfpInstance(n, std::move(oracles), std::move(slater), std::move(id));
    } catch (const Error& err) {
        throw ParseError(std::string("instance: ") + err.what());
    }
}

void save_instance(const CfpInstance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << write_instance(inst);
    if (!out) throw IoError("write failed: " + path);
}

CfpInstance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_instance(buf.str());
}

}  // namespace feaskit
