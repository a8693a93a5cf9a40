#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sanas {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- genome / search space ---------------------------------------------------

class OutOfRangeGene : public Error {
public:
    OutOfRangeGene(int position, int value)
        : Error("gene " + std::to_string(position) + " out of range: " + std::to_string(value)),
          position(position), value(value) {}
    int position;
    int value;
};

class NonCanonical : public Error {
public:
    explicit NonCanonical(const std::string& what) : Error("non-canonical genome: " + what) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t token_index, const std::string& what)
        : Error("parse error at token " + std::to_string(token_index) + ": " + what),
          token_index(token_index) {}
    std::size_t token_index;
};

class SpaceTooLarge : public Error {
public:
    SpaceTooLarge(double log10_cardinality, std::uint64_t cap)
        : Error("search space cardinality 10^" + std::to_string(log10_cardinality) +
                " exceeds cap " + std::to_string(cap)),
          log10_cardinality(log10_cardinality), cap(cap) {}
    double log10_cardinality;
    std::uint64_t cap;
};

// -- surrogates ---------------------------------------------------------------

class InvalidTrainingSet : public Error {
public:
    explicit InvalidTrainingSet(const std::string& what) : Error("invalid training set: " + what) {}
};

class SingularSystem : public Error {
public:
    explicit SingularSystem(const std::string& what) : Error("singular system: " + what) {}
};

class AllModelsFailed : public Error {
public:
    AllModelsFailed() : Error("all surrogate model fits failed") {}
};

// -- metrics / objectives -----------------------------------------------------

class ArityMismatch : public Error {
public:
    ArityMismatch(std::size_t a, std::size_t b)
        : Error("objective arity mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class AllTied : public Error {
public:
    explicit AllTied(const std::string& which) : Error("rank correlation undefined, all values tied in " + which) {}
};

// -- evaluation ---------------------------------------------------------------

class NonPositiveInput : public Error {
public:
    explicit NonPositiveInput(const std::string& what) : Error("non-positive input: " + what) {}
};

class MissingEntry : public Error {
public:
    explicit MissingEntry(const std::string& genome_text)
        : Error("no table entry for genome " + genome_text), genome_text(genome_text) {}
    std::string genome_text;
};

class DuplicateKey : public Error {
public:
    explicit DuplicateKey(const std::string& genome_text)
        : Error("duplicate table entry for genome " + genome_text), genome_text(genome_text) {}
    std::string genome_text;
};

class ChildCrashed : public Error {
public:
    explicit ChildCrashed(const std::string& what) : Error("evaluator child crashed: " + what) {}
};

class EvalTimeout : public Error {
public:
    explicit EvalTimeout(std::uint64_t request_id)
        : Error("evaluation request " + std::to_string(request_id) + " timed out"),
          request_id(request_id) {}
    std::uint64_t request_id;
};

class MalformedResponse : public Error {
public:
    explicit MalformedResponse(const std::string& line)
        : Error("malformed evaluator response: " + line), line(line) {}
    std::string line;
};

// -- driver / persistence -----------------------------------------------------

class EmptyAfterDedup : public Error {
public:
    EmptyAfterDedup() : Error("no candidates left after archive deduplication") {}
};

class CorruptCheckpoint : public Error {
public:
    explicit CorruptCheckpoint(const std::string& what) : Error("corrupt checkpoint: " + what) {}
};

class MissingRunArtifacts : public Error {
public:
    explicit MissingRunArtifacts(const std::string& what) : Error("missing run artifacts: " + what) {}
};

class InvalidConfig : public Error {
public:
    explicit InvalidConfig(const std::string& what) : Error("invalid config: " + what) {}
};

} // namespace sanas
