#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace adelic {

/// command-line overrides applied on top of the config's params block
struct RunOverrides {
    std::optional<std::string> output_dir;
    std::optional<long> n_max;
    std::optional<long> stride;
    std::optional<long> precision_bits;
    std::optional<unsigned long> seed;
    std::optional<int> threads;
    bool emit_svg = false;
};

/// exit codes: 0 ok, 2 config error, 3 inadmissible spec (negative volume or
/// non-ergodic rotation), 4 verification failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInadmissible = 3;
inline constexpr int kExitVerifyFailed = 4;

int run_command(const std::string& command, const std::string& config_path,
                const RunOverrides& overrides, std::ostream& out, std::ostream& err);

}  // namespace adelic
