#include "cosenet/regressor.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cosenet/error.hpp"

namespace cosenet {

namespace {

// Rows accumulated into the Gram matrix per rank update.
constexpr Eigen::Index kGramChunk = 1024;

void check_window(const Matrix& w, std::size_t throughput) {
    const auto t = static_cast<Eigen::Index>(throughput);
    if (w.rows() != t || w.cols() != t) {
        std::ostringstream msg;
        msg << "window is " << w.rows() << "x" << w.cols() << ", model expects " << t << "x" << t;
        throw Error(ErrorCode::ShapeMismatch, msg.str());
    }
}

std::size_t training_throughput(const TrainingSet& ts) {
    if (ts.records.empty()) {
        throw Error(ErrorCode::EmptyTrainingSet, "training set is empty");
    }
    const auto t = static_cast<std::size_t>(ts.records.front().window.rows());
    for (const auto& rec : ts.records) {
        check_window(rec.window, t);
        if (rec.target.size() != t) {
            throw Error(ErrorCode::ShapeMismatch, "target length does not match window size");
        }
    }
    return t;
}

}  // namespace

Vector Standardizer::apply(const Vector& features) const {
    return (features - means).cwiseQuotient(stds);
}

Vector flatten_window(const Matrix& w) {
    if (w.rows() != w.cols() || w.rows() == 0) {
        throw Error(ErrorCode::ShapeMismatch, "window must be non-empty and square");
    }
    Vector x(w.size() + 1);
    // Matrix is row-major, so the raw storage is already the row-major flatten.
    x.head(w.size()) = Eigen::Map<const Vector>(w.data(), w.size());
    x(w.size()) = 1.0;
    return x;
}

Standardizer fit_standardizer(const TrainingSet& ts) {
    const std::size_t t = training_throughput(ts);
    const auto d = static_cast<Eigen::Index>(t * t + 1);
    const auto n = static_cast<double>(ts.records.size());

    Vector mean = Vector::Zero(d);
    for (const auto& rec : ts.records) mean += flatten_window(rec.window);
    mean /= n;

    Vector var = Vector::Zero(d);
    for (const auto& rec : ts.records) var += (flatten_window(rec.window) - mean).array().square().matrix();
    var /= n;

    Standardizer s;
    s.means = mean;
    s.stds = var.cwiseSqrt();
    for (Eigen::Index j = 0; j < d; ++j) {
        if (s.stds(j) <= 0.0) s.stds(j) = 1.0;
    }
    s.means(d - 1) = 0.0;
    s.stds(d - 1) = 1.0;
    return s;
}

RidgeModel train_ridge(const TrainingSet& ts, double lambda, bool standardize,
                       const TrainingMeta& meta) {
    const std::size_t t = training_throughput(ts);
    if (!(lambda >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "lambda must be non-negative");
    }
    const auto d = static_cast<Eigen::Index>(t * t + 1);
    const auto n = static_cast<Eigen::Index>(ts.records.size());

    RidgeModel model;
    model.throughput = t;
    model.lambda = lambda;
    model.training_meta = meta;
    model.training_meta.samples = ts.records.size();
    if (standardize) model.standardizer = fit_standardizer(ts);

    Matrix gram = Matrix::Zero(d, d);
    Matrix xty = Matrix::Zero(d, static_cast<Eigen::Index>(t));
    Matrix x_chunk;
    Matrix y_chunk;
    for (Eigen::Index begin = 0; begin < n; begin += kGramChunk) {
        const Eigen::Index rows = std::min(kGramChunk, n - begin);
        x_chunk.resize(rows, d);
        y_chunk.resize(rows, static_cast<Eigen::Index>(t));
        for (Eigen::Index r = 0; r < rows; ++r) {
            const auto& rec = ts.records[static_cast<std::size_t>(begin + r)];
            Vector x = flatten_window(rec.window);
            if (model.standardizer) x = model.standardizer->apply(x);
            x_chunk.row(r) = x.transpose();
            for (std::size_t j = 0; j < t; ++j) {
                y_chunk(r, static_cast<Eigen::Index>(j)) = rec.target[j];
            }
        }
        gram.selfadjointView<Eigen::Lower>().rankUpdate(x_chunk.transpose());
        xty.noalias() += x_chunk.transpose() * y_chunk;
    }
    gram.diagonal().head(d - 1).array() += lambda;

    Eigen::LLT<Matrix, Eigen::Lower> llt(gram);
    const double rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
    if (llt.info() != Eigen::Success || rcond < 1e-14) {
        std::ostringstream msg;
        msg << "normal equations are singular (lambda=" << lambda << ", rcond=" << rcond << ")";
        throw Error(ErrorCode::SingularSystem, msg.str());
    }
    model.weights = llt.solve(xty);
    return model;
}

Vector predict_raw(const RidgeModel& model, const Matrix& w) {
    check_window(w, model.throughput);
    Vector x = flatten_window(w);
    if (model.standardizer) x = model.standardizer->apply(x);
    return model.weights.transpose() * x;
}

ProbabilityVector predict(const RidgeModel& model, const Matrix& w) {
    const Vector raw = predict_raw(model, w);
    std::vector<double> probs(static_cast<std::size_t>(raw.size()));
    for (Eigen::Index j = 0; j < raw.size(); ++j) {
        probs[static_cast<std::size_t>(j)] = std::clamp(raw(j), 0.0, 1.0);
    }
    return ProbabilityVector(std::move(probs));
}

namespace {

using nlohmann::json;

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector to_vector(const json& j, std::size_t expected, const char* field) {
    auto values = j.get<std::vector<double>>();
    if (values.size() != expected) {
        throw Error(ErrorCode::IoError, std::string("model field '") + field + "' has wrong length");
    }
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

void save_model(const RidgeModel& model, const std::filesystem::path& path) {
    json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["throughput"] = model.throughput;
    doc["lambda"] = model.lambda;
    doc["standardized"] = model.standardizer.has_value();
    doc["means"] = model.standardizer ? to_std(model.standardizer->means) : std::vector<double>{};
    doc["stds"] = model.standardizer ? to_std(model.standardizer->stds) : std::vector<double>{};
    doc["weights"] = std::vector<double>(model.weights.data(),
                                         model.weights.data() + model.weights.size());
    const auto& meta = model.training_meta;
    doc["training_meta"] = {
        {"samples", meta.samples},         {"noise_mean", meta.noise_mean},
        {"noise_var", meta.noise_var},     {"groups_mean", meta.groups_mean},
        {"groups_var", meta.groups_var},   {"seed", meta.seed},
    };

    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

RidgeModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, "malformed model file " + path.string() + ": " + e.what());
    }

    try {
        const int version = doc.at("format_version").get<int>();
        if (version != kModelFormatVersion) {
            throw Error(ErrorCode::FormatVersionMismatch,
                        "model format version " + std::to_string(version) + ", expected " +
                            std::to_string(kModelFormatVersion));
        }
        RidgeModel model;
        model.throughput = doc.at("throughput").get<std::size_t>();
        if (model.throughput < 2 || model.throughput % 2 != 0) {
            throw Error(ErrorCode::IoError, "model throughput must be even and >= 2");
        }
        model.lambda = doc.at("lambda").get<double>();
        const std::size_t d = model.feature_count();
        const auto t = static_cast<Eigen::Index>(model.throughput);
        Vector w = to_vector(doc.at("weights"), d * model.throughput, "weights");
        model.weights = Eigen::Map<const Matrix>(w.data(), static_cast<Eigen::Index>(d), t);
        if (doc.at("standardized").get<bool>()) {
            model.standardizer = Standardizer{to_vector(doc.at("means"), d, "means"),
                                              to_vector(doc.at("stds"), d, "stds")};
        }
        if (doc.contains("training_meta")) {
            const auto& m = doc["training_meta"];
            auto& meta = model.training_meta;
            meta.samples = m.value("samples", std::size_t{0});
            meta.noise_mean = m.value("noise_mean", 0.0);
            meta.noise_var = m.value("noise_var", 0.0);
            meta.groups_mean = m.value("groups_mean", 0.0);
            meta.groups_var = m.value("groups_var", 0.0);
            meta.seed = m.value("seed", std::uint64_t{0});
        }
        return model;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, "invalid model file " + path.string() + ": " + e.what());
    }
}

}  // namespace cosenet
