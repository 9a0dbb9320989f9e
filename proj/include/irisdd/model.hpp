#pragma once

// A trained system: one discriminant direction per enrolled identity plus the
// decision band it was trained against. Persisted as JSON; weights are written
// with 17 significant digits so a read-back model is bit-identical.

#include "irisdd/projection.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace irisdd {

inline constexpr int model_format_version = 1;

struct Model {
    std::size_t ell = 0;
    double threshold = 0.5;
    double final_sb = 0.0;
    bool converged = false;
    std::size_t epochs_used = 0;
    std::vector<DiscriminantDirection> directions;  // ascending identity_id

    // nullptr if the identity is not enrolled.
    const DiscriminantDirection* find(std::int64_t identity_id) const noexcept;
};

void write_model(std::ostream& out, const Model& model);
void write_model(const std::filesystem::path& path, const Model& model);

Model read_model(std::istream& in);
Model read_model(const std::filesystem::path& path);

}  // namespace irisdd
