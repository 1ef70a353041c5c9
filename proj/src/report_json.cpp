#include "euclid_match/report_json.hpp"

#include <ostream>

#include <json.hpp>

namespace euclid_match {

std::string report_to_json(const RunReport& rep, int indent) {
    nlohmann::json j;
    j["schema"] = "1";
    j["n"] = rep.n;
    j["dim"] = rep.dim;
    j["config"] = {
        {"r", rep.config.r},
        {"epsilon", rep.config.epsilon},
        {"threshold_exponent", rep.config.threshold_exponent},
        {"mode", to_string(rep.config.mode)},
        {"seed", rep.config.seed},
        {"exact_engine", to_string(rep.config.exact_engine)},
        {"knn_r_cap", rep.config.knn_r_cap},
        {"exact_capacity", rep.config.exact_capacity},
        {"resolved_mode", rep.resolved_mode},
    };
    j["iterations"] = nlohmann::json::array();
    for (const IterationRecord& it : rep.iterations) {
        j["iterations"].push_back({
            {"size_in", it.size_in},
            {"size_out", it.size_out},
            {"q", it.q},
            {"odd_counts", it.odd_counts},
            {"even_counts", it.even_counts},
            {"matching_length", it.matching_length},
            {"wall_seconds", it.wall_seconds},
            {"knn_exhausted", it.knn_exhausted},
        });
    }
    j["exact_tail"] = {{"size", rep.exact_tail.size}, {"length", rep.exact_tail.length}};
    j["total_length"] = rep.total_length;
    j["wall_times"] = {
        {"reduction_seconds", rep.reduction_seconds},
        {"exact_tail_seconds", rep.exact_tail_seconds},
        {"total_seconds", rep.total_seconds},
    };
    return j.dump(indent);
}

void write_matching(std::ostream& out, const Matching& m) {
    for (auto [a, b] : m.pairs) out << a << ' ' << b << '\n';
}

}  // namespace euclid_match
