#pragma once

#include <stdexcept>

namespace waveobs::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kConfigError = 2,
    kIoError = 3,
    kDataMismatch = 4,
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DataMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace waveobs::cli
