#pragma once

#include <stdexcept>
#include <string>

namespace pf {

inline constexpr const char* kVersion = "0.1.0";

// Error taxonomy mapped onto CLI exit codes: 1 usage, 2 data, 3 numerical.
struct Error : std::runtime_error {
    enum class Kind { usage = 1, data = 2, numeric = 3 };
    Kind kind;
    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline Error usage_error(const std::string& msg) { return Error(Error::Kind::usage, msg); }
inline Error data_error(const std::string& msg) { return Error(Error::Kind::data, msg); }
inline Error numeric_error(const std::string& msg) { return Error(Error::Kind::numeric, msg); }

}  // namespace pf
