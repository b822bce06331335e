#include "ats/hypothesis_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ats {

using nlohmann::json;

Hypothesis read_hypothesis_json(std::istream& in, const std::string& name) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(name + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("H") || !j.contains("y")) {
        throw std::runtime_error(name + ": expected an object with \"H\" and \"y\"");
    }
    const json& jh = j["H"];
    if (!jh.is_array() || jh.empty()) {
        throw std::runtime_error(name + ": \"H\" must be a nonempty array of rows");
    }
    const std::size_t rows = jh.size();
    std::size_t cols = 0;
    std::vector<double> data;
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = jh[i];
        if (!row.is_array()) throw std::runtime_error(name + ": H row " + std::to_string(i) +
                                                      " is not an array");
        if (i == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            throw std::runtime_error(name + ": H row " + std::to_string(i) + " has " +
                                     std::to_string(row.size()) + " entries, expected " +
                                     std::to_string(cols));
        }
        for (const json& v : row) {
            if (!v.is_number()) throw std::runtime_error(name + ": non-numeric entry in H");
            data.push_back(v.get<double>());
        }
    }
    const json& jy = j["y"];
    if (!jy.is_array() || jy.size() != rows) {
        throw std::runtime_error(name + ": \"y\" must be an array of length " +
                                 std::to_string(rows));
    }
    std::vector<double> y;
    y.reserve(rows);
    for (const json& v : jy) {
        if (!v.is_number()) throw std::runtime_error(name + ": non-numeric entry in y");
        y.push_back(v.get<double>());
    }
    return Hypothesis(DenseMatrix(rows, cols, std::move(data)), std::move(y));
}

Hypothesis read_hypothesis_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_hypothesis_json(in, path);
}

void write_hypothesis_json(std::ostream& out, const Hypothesis& h) {
    json jh = json::array();
    for (std::size_t i = 0; i < h.m(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < h.d(); ++j) row.push_back(h.h(i, j));
        jh.push_back(std::move(row));
    }
    json j{{"H", std::move(jh)}, {"y", h.y}};
    out << j.dump(2) << '\n';
}

void write_hypothesis_json_file(const std::string& path, const Hypothesis& h) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_hypothesis_json(out, h);
}

}  // namespace ats
