#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "polyquant/coefficient.hpp"
#include "polyquant/quantizer.hpp"

namespace polyquant::io {

using ordered_json = nlohmann::ordered_json;

/// Shortest round-trip decimal form, always with a fraction or exponent ("3.0").
inline std::string number(double v) { return ordered_json(v).dump(); }

inline Method method_from_string(const std::string& s) {
    if (s == "closed_form") return Method::closed_form;
    if (s == "lloyd") return Method::lloyd;
    if (s == "manual") return Method::manual;
    if (s == "quadrature") return Method::quadrature;
    throw std::invalid_argument("unknown method tag: " + s);
}

inline ordered_json points_json(const std::vector<Point2>& pts) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : pts) arr.push_back({p.x, p.y});
    return arr;
}

template <class T>
ordered_json optional_json(const std::optional<T>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

inline ordered_json to_json(const QuantizerSet& q) {
    ordered_json j;
    j["m"] = q.meta.m;
    j["n"] = q.meta.n;
    j["k"] = optional_json(q.meta.k);
    j["r"] = optional_json(q.meta.r);
    j["method"] = std::string(to_string(q.meta.method));
    j["points"] = points_json(q.points);
    return j;
}

inline QuantizerSet quantizer_from_json(const ordered_json& j) {
    QuantizerSet q;
    q.meta.m = j.at("m").get<int>();
    q.meta.n = j.at("n").get<int>();
    if (!j.at("k").is_null()) q.meta.k = j.at("k").get<int>();
    if (!j.at("r").is_null()) q.meta.r = j.at("r").get<double>();
    q.meta.method = method_from_string(j.at("method").get<std::string>());
    for (const auto& p : j.at("points")) q.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (static_cast<int>(q.points.size()) != q.meta.n) throw std::invalid_argument("point count does not match n");
    return q;
}

/// Document emitted by `polyquant quantize --format json`.
inline ordered_json quantize_document(const QuantizerSet& q, double V) {
    ordered_json j;
    j["m"] = q.meta.m;
    j["k"] = optional_json(q.meta.k);
    j["n"] = q.meta.n;
    j["r"] = optional_json(q.meta.r);
    j["coefficient"] = quant_coefficient(q.meta.m);
    j["V"] = V;
    j["points"] = points_json(q.points);
    return j;
}

inline ordered_json to_json(const DistortionReport& rep) {
    ordered_json j;
    j["m"] = rep.params.m;
    j["k"] = optional_json(rep.params.k);
    j["n"] = rep.params.n;
    j["r"] = optional_json(rep.params.r);
    j["total"] = rep.total;
    j["corner_part"] = optional_json(rep.corner_part);
    j["side_part"] = optional_json(rep.side_part);
    j["method"] = std::string(to_string(rep.method));
    if (!rep.per_cell.empty()) j["per_cell"] = rep.per_cell;
    return j;
}

inline const char* convergence_csv_header() { return "m,k,n,r,Vn,scaled,coefficient,deviation"; }

inline std::string convergence_csv_line(const ConvergenceRow& row) {
    return std::to_string(row.m) + ',' + std::to_string(row.k) + ',' + std::to_string(row.n) + ',' + number(row.r) +
           ',' + number(row.Vn) + ',' + number(row.scaled) + ',' + number(row.coefficient) + ',' +
           number(row.deviation);
}

inline ordered_json to_json(const ConvergenceRow& row) {
    ordered_json j;
    j["m"] = row.m;
    j["k"] = row.k;
    j["n"] = row.n;
    j["r"] = row.r;
    j["Vn"] = row.Vn;
    j["scaled"] = row.scaled;
    j["coefficient"] = row.coefficient;
    j["deviation"] = row.deviation;
    return j;
}

}  // namespace polyquant::io
