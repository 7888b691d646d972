#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maxface {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + what),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifier : public ParseError {
public:
    UnknownIdentifier(std::size_t offset, const std::string& name)
        : ParseError(offset, "unknown identifier '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

// Evaluation hit a pole (division by zero, log 0, negative power of 0, overflow).
class PoleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A tracked log/root argument moved too far between two evaluations to pick a branch.
class BranchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ClearanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Residue radii disagree: usually a branch point inside the circle.
class ResidueError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameters or input data outside what a builder or command accepts.
class InadmissibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FrontCertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace maxface
