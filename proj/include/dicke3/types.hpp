#pragma once

#include <string>
#include <string_view>

namespace dicke3 {

/// Atomic level scheme; each forbids one dipolar transition
/// (Xi: 1-3, Lambda: 1-2, V: 2-3).
enum class Configuration { Xi, Lambda, V };

/// The two decoupling-angle choices available per configuration.
enum class Branch { First, Second };

/// Dipolar couplings, labelled by their level pair.
enum class Coupling { Mu12, Mu13, Mu23 };

std::string to_string(Configuration cfg);
std::string to_string(Branch branch);
std::string to_string(Coupling c);

/// Accepts "xi", "lambda", "v" (case-insensitive). Throws InvalidConfig.
Configuration parse_configuration(std::string_view text);
/// Accepts "1"/"first" and "2"/"second". Throws InvalidConfig.
Branch parse_branch(std::string_view text);

/// Level pair (j, k) with j < k for a coupling.
struct LevelPair {
    int j;
    int k;
};
LevelPair levels_of(Coupling c);
Coupling coupling_of(int j, int k);

}  // namespace dicke3
