#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcsched {

// Base of every error raised by the library. `data_error()` separates bad
// input (files, matrices, schedules) from violated internal invariants.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual bool data_error() const noexcept { return true; }
};

class SelfLoopError : public Error {
public:
    explicit SelfLoopError(std::size_t task)
        : Error("task " + std::to_string(task) + " depends on itself"), task_(task) {}
    std::size_t task() const noexcept { return task_; }

private:
    std::size_t task_;
};

class CycleError : public Error {
public:
    explicit CycleError(std::vector<std::size_t> residue);
    // Tasks left over after peeling every zero-in-degree node.
    const std::vector<std::size_t>& tasks() const noexcept { return tasks_; }

private:
    std::vector<std::size_t> tasks_;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class CrossApplicationEdgeError : public Error {
public:
    CrossApplicationEdgeError(std::size_t child, std::size_t parent)
        : Error("edge " + std::to_string(parent) + " -> " + std::to_string(child) +
                " crosses applications") {}
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

class GeneRangeError : public Error {
public:
    GeneRangeError(std::size_t position, long long value, std::size_t clouds)
        : Error("gene at position " + std::to_string(position) + " has value " +
                std::to_string(value) + ", expected [0, " + std::to_string(clouds) + ")"),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class ZeroFitnessError : public Error {
public:
    explicit ZeroFitnessError(std::size_t index)
        : Error("fitness at index " + std::to_string(index) + " is not strictly positive") {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// File-format errors.
class TokenCountError : public Error {
public:
    TokenCountError(std::size_t expected, std::size_t found)
        : Error("expected " + std::to_string(expected) + " values, found " +
                std::to_string(found)) {}
};

class NonNumericError : public Error {
public:
    NonNumericError(std::size_t line, const std::string& token)
        : Error("line " + std::to_string(line) + ": non-numeric token '" + token + "'"),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NonBinaryError : public Error {
public:
    NonBinaryError(std::size_t row, std::size_t col)
        : Error("dependency cell (" + std::to_string(row) + ", " + std::to_string(col) +
                ") is not 0 or 1") {}
};

class PositivityError : public Error {
public:
    PositivityError(std::size_t task, std::size_t cloud, double value)
        : Error("ETC cell (" + std::to_string(task) + ", " + std::to_string(cloud) +
                ") = " + std::to_string(value) + " is not a positive finite duration") {}
};

// Malformed key=value or manifest file.
class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
    bool data_error() const noexcept override { return false; }
};

}  // namespace mcsched
