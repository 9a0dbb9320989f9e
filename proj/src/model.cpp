#include "irisdd/model.hpp"

#include "irisdd/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace irisdd {

namespace {

void put_real(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

}  // namespace

const DiscriminantDirection* Model::find(std::int64_t identity_id) const noexcept {
    auto it = std::lower_bound(
        directions.begin(), directions.end(), identity_id,
        [](const DiscriminantDirection& d, std::int64_t id) { return d.identity_id < id; });
    return it != directions.end() && it->identity_id == identity_id ? &*it : nullptr;
}

// Written by hand rather than through nlohmann::json::dump so that every weight
// carries exactly 17 significant digits.
void write_model(std::ostream& out, const Model& model) {
    out << "{\n  \"version\": " << model_format_version << ",\n  \"ell\": " << model.ell
        << ",\n  \"threshold\": ";
    put_real(out, model.threshold);
    out << ",\n  \"final_sb\": ";
    put_real(out, model.final_sb);
    out << ",\n  \"converged\": " << (model.converged ? "true" : "false")
        << ",\n  \"epochs_used\": " << model.epochs_used << ",\n  \"identities\": [";
    for (std::size_t k = 0; k < model.directions.size(); ++k) {
        const auto& d = model.directions[k];
        out << (k ? ",\n" : "\n") << "    {\"identity_id\": " << d.identity_id
            << ", \"weights\": [";
        for (std::size_t i = 0; i < d.weights.size(); ++i) {
            if (i) out << ", ";
            put_real(out, d.weights[i]);
        }
        out << "]}";
    }
    out << (model.directions.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void write_model(const std::filesystem::path& path, const Model& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_model(out, model);
    if (!out) throw IoError("failed writing " + path.string());
}

Model read_model(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("model is not valid JSON: ") + e.what(), 0);
    }
    try {
        if (j.at("version").get<int>() != model_format_version) {
            throw ParseError("unsupported model version " + j.at("version").dump(), 0);
        }
        Model m;
        m.ell = j.at("ell").get<std::size_t>();
        m.threshold = j.at("threshold").get<double>();
        m.final_sb = j.at("final_sb").get<double>();
        m.converged = j.at("converged").get<bool>();
        m.epochs_used = j.at("epochs_used").get<std::size_t>();
        for (const auto& entry : j.at("identities")) {
            DiscriminantDirection d;
            d.identity_id = entry.at("identity_id").get<std::int64_t>();
            d.weights = entry.at("weights").get<std::vector<double>>();
            if (d.weights.size() != m.ell) {
                throw DimensionError("identity " + std::to_string(d.identity_id) + " has " +
                                     std::to_string(d.weights.size()) + " weights, model ell is " +
                                     std::to_string(m.ell));
            }
            m.directions.push_back(std::move(d));
        }
        std::sort(m.directions.begin(), m.directions.end(),
                  [](const auto& a, const auto& b) { return a.identity_id < b.identity_id; });
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed model: ") + e.what(), 0);
    }
}

Model read_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return read_model(in);
    } catch (const ParseError& e) {
        throw e.in_source(path.string());
    }
}

}  // namespace irisdd
