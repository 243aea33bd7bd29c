#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace goodness
{
    /// Malformed input: out-of-range vertex ids, unparsable strings, bad shapes.
    class InputError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// A documented precondition of an operation does not hold.
    class PreconditionError : public std::logic_error
    {
        public:
            using std::logic_error::logic_error;
    };

    /// Something that the construction guarantees could not happen did happen.
    class InternalError : public std::logic_error
    {
        public:
            using std::logic_error::logic_error;
    };

    /// The instance is too large for an exhaustive check.
    class SizeError : public std::length_error
    {
        public:
            using std::length_error::length_error;
    };

    /// Why a pipeline stage could not produce its object.
    struct FailureReport
    {
        std::string stage;
        std::string message;
        nlohmann::json trace = nlohmann::json::array();
    };

    /// A search or construction failed in a way the caller is expected to handle.
    class SearchFailure : public std::runtime_error
    {
        public:
            explicit SearchFailure(FailureReport report) :
                std::runtime_error(report.stage + ": " + report.message),
                _report(std::move(report))
            {
            }

            auto report() const -> const FailureReport & { return _report; }

        private:
            FailureReport _report;
    };

    /// Either a value or a stage-labelled failure report.
    template <typename T>
    class Outcome
    {
        public:
            Outcome(T value) : _data(std::move(value)) { }
            Outcome(FailureReport failure) : _data(std::move(failure)) { }

            auto ok() const -> bool { return std::holds_alternative<T>(_data); }
            explicit operator bool() const { return ok(); }

            auto value() const & -> const T &
            {
                if (! ok())
                    throw SearchFailure(failure());
                return std::get<T>(_data);
            }

            auto value() && -> T
            {
                if (! ok())
                    throw SearchFailure(failure());
                return std::get<T>(std::move(_data));
            }

            auto failure() const -> const FailureReport & { return std::get<FailureReport>(_data); }

        private:
            std::variant<T, FailureReport> _data;
    };
}
