#include "nd/report.hpp"

#include <json.hpp>

#include <sstream>

namespace nd {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::violated: return "violated";
        case Verdict::out_of_hypothesis: return "out-of-hypothesis";
        case Verdict::pg_zero: return "pg-zero";
    }
    return "unknown";
}

std::string report_to_csv_row(const InvariantReport& rep) {
    std::ostringstream os;
    os << rep.input_hash << "," << rep.n << "," << rep.r << "," << rep.scale.get_str()
       << "," << rep.mu.get_str() << "," << rep.pg.get_str() << ","
       << rep.cnr_value.get_num().get_str() << "," << rep.cnr_value.get_den().get_str()
       << "," << rep.margin.get_num().get_str() << "," << rep.margin.get_den().get_str()
       << "," << verdict_name(rep.verdict);
    return os.str();
}

std::string report_to_json(const InvariantReport& rep) {
    nlohmann::json j;
    j["version"] = kVersionString;
    j["input_hash"] = rep.input_hash;
    j["n"] = rep.n;
    j["r"] = rep.r;
    j["d"] = rep.scale.get_str();
    j["mu"] = rep.mu.get_str();
    j["pg"] = rep.pg.get_str();
    j["cnr"] = rep.cnr_value.get_str();
    j["margin"] = rep.margin.get_str();
    if (rep.ratio) j["ratio"] = rep.ratio->get_str();
    j["verdict"] = verdict_name(rep.verdict);
    if (!rep.metadata.empty()) {
        nlohmann::json meta;
        for (const auto& [k, v] : rep.metadata) meta[k] = v;
        j["metadata"] = meta;
    }
    return j.dump();
}

std::string report_to_text(const InvariantReport& rep) {
    std::ostringstream os;
    os << "input " << rep.input_hash << "  n=" << rep.n << " r=" << rep.r
       << " d=" << rep.scale.get_str() << "\n"
       << "  mu      = " << rep.mu.get_str() << "\n"
       << "  pg      = " << rep.pg.get_str() << "\n"
       << "  C_{n,r} = " << rep.cnr_value.get_str() << "\n"
       << "  margin  = " << rep.margin.get_str() << "  (mu - C_{n,r} pg)\n";
    if (rep.ratio) os << "  ratio   = " << rep.ratio->get_str() << "\n";
    os << "  verdict = " << verdict_name(rep.verdict) << "\n";
    return os.str();
}

}  // namespace nd
