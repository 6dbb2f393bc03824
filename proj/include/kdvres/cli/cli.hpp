#pragma once

#include "kdvres/core/errors.hpp"
#include "kdvres/core/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kdvres::cli {

class ConfigError : public Error {
public:
    using Error::Error;
};

enum class Format { Json, Text, Csv };

std::string format_name(Format f);
Format parse_format(const std::string& s);

struct Config {
    int dmax = 12;
    int qorder = 60;
    int torder = 8;
    int zorder = 10;
    int times = 5;
    std::vector<std::string> taus{"constant", "linear", "soliton:p=1", "soliton:p=1/2"};
    std::string cache_dir;
    Format format = Format::Text;
    Rational c_flow{-2};
    std::optional<Rational> c0;  // unset: calibrated

    /// key = value lines; from_text(to_text()) reproduces the config.
    std::string to_text() const;
    static Config from_text(const std::string& text);
    void validate() const;

    bool operator==(const Config&) const = default;
};

/// File name for a cached artifact; includes every cutoff and convention constant.
std::string cache_key(const std::string& module, const std::string& operation, const std::vector<std::string>& cutoffs,
                      const Rational& c_flow, const std::optional<Rational>& c0);

/// Exit codes: 0 all checks pass, 1 an identity failed, 2 usage or configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kdvres::cli
