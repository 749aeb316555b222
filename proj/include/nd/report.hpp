#pragma once

#include <map>
#include <optional>
#include <string>

#include "nd/core.hpp"

namespace nd {

inline constexpr const char* kVersionString = "newton-durfee 0.1.0";

enum class Verdict { holds, violated, out_of_hypothesis, pg_zero };

std::string verdict_name(Verdict v);

// One Durfee-type evaluation: mu, p_g, C_{n,r} and the margin mu - C p_g.
struct InvariantReport {
    std::string input_hash;
    long n = 0;
    long r = 0;
    Rat scale = Rat(1);
    Int mu;
    Int pg;
    Rat cnr_value;
    Rat margin;
    std::optional<Rat> ratio;  // mu / pg when pg > 0
    Verdict verdict = Verdict::holds;
    std::map<std::string, std::string> metadata;
};

inline const char* kCsvHeader =
    "input_hash,n,r,d,mu,pg,cnr_num,cnr_den,margin_num,margin_den,verdict";

std::string report_to_csv_row(const InvariantReport& rep);
std::string report_to_json(const InvariantReport& rep);
std::string report_to_text(const InvariantReport& rep);

}  // namespace nd
