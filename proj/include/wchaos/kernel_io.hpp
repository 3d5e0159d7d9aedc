#pragma once

// Kernel file format:
//   {"order": n, "dim": d, "entries": [{"idx": [sorted ints], "val": float}, ...]}
// Indices must be canonical (nondecreasing, in 1..dim) and unique; duplicates
// and unsorted indices are rejected rather than silently merged.

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wchaos/sym_tensor.hpp"

namespace wchaos {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline SymTensor kernel_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("dim") || !j.contains("entries"))
        throw io_error("kernel json: need object with order, dim, entries");
    if (!j["order"].is_number_integer() || !j["dim"].is_number_integer())
        throw io_error("kernel json: order and dim must be integers");
    const int order = j["order"].get<int>();
    const int dim = j["dim"].get<int>();
    if (order < 0 || dim < 1) throw io_error("kernel json: order < 0 or dim < 1");
    SymTensor f = zero_tensor(order, dim);
    if (!j["entries"].is_array()) throw io_error("kernel json: entries must be an array");
    for (const auto& e : j["entries"]) {
        if (!e.is_object() || !e.contains("idx") || !e.contains("val"))
            throw io_error("kernel json: entry needs idx and val");
        MultiIndex idx;
        for (const auto& v : e["idx"]) {
            if (!v.is_number_integer()) throw io_error("kernel json: idx must be integers");
            idx.push_back(v.get<std::int32_t>());
        }
        if (static_cast<int>(idx.size()) != order)
            throw io_error("kernel json: idx length != order");
        if (!is_canonical(idx, dim))
            throw io_error("kernel json: idx not sorted nondecreasing within 1..dim");
        if (!e["val"].is_number()) throw io_error("kernel json: val must be a number");
        const double val = e["val"].get<double>();
        if (!std::isfinite(val)) throw io_error("kernel json: val not finite");
        if (f.entries.count(idx)) throw io_error("kernel json: duplicate canonical idx");
        if (val != 0.0) f.entries.emplace(std::move(idx), val);
    }
    return f;
}

inline nlohmann::json kernel_to_json(const SymTensor& f) {
    nlohmann::json j;
    j["order"] = f.order;
    j["dim"] = f.dim;
    j["entries"] = nlohmann::json::array();
    for (const auto& [idx, val] : f.entries)
        j["entries"].push_back({{"idx", idx}, {"val", val}});
    return j;
}

inline SymTensor load_kernel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open kernel file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("malformed kernel json in " + path + ": " + e.what());
    }
    return kernel_from_json(j);
}

inline void save_kernel(const SymTensor& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write kernel file: " + path);
    out << kernel_to_json(f).dump(2) << '\n';
}

}  // namespace wchaos
