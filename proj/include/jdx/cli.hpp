#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "jdx/expansion.hpp"

namespace jdx::cli {

/// Entry point of the jdx tool. Exit codes: 0 success, 1 domain or
/// condition failure, 2 usage or parse error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

nlohmann::json to_json(const expansion::TailCoefficients& c);
nlohmann::json to_json(const expansion::DensityCoefficients& c);
nlohmann::json to_json(const expansion::EpsilonInvarianceReport& r);

/// 17 significant digits.
std::string format_double(double v);

}  // namespace jdx::cli
