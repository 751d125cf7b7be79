#pragma once

#include <stdexcept>
#include <string>

namespace hh {

// Every failure the library raises derives from Error so callers can catch
// one type; the concrete class tells them what went wrong.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutOfRange : public Error {
public:
    explicit OutOfRange(std::string field)
        : Error("OutOfRange(" + field + ")"), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class IndexBelowCritical : public Error {
public:
    using Error::Error;
};

class WrongRegime : public Error {
public:
    using Error::Error;
};

class RegimeMismatch : public Error {
public:
    using Error::Error;
};

class WeightNotIntegrable : public Error {
public:
    using Error::Error;
};

class UnstableStep : public Error {
public:
    using Error::Error;
};

class DomainEscape : public Error {
public:
    DomainEscape(double t, double r_max)
        : Error("DomainEscape: support reached r_max=" + std::to_string(r_max) +
                " at t=" + std::to_string(t)),
          time(t) {}
    double time;
};

class StepLimit : public Error {
public:
    using Error::Error;
};

class NoSignChange : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class EmptyWindow : public Error {
public:
    using Error::Error;
};

class ConditionsFail : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    explicit ConfigError(std::string key, const std::string& why = "")
        : Error("ConfigError(" + key + ")" + (why.empty() ? "" : ": " + why)),
          key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

}  // namespace hh
