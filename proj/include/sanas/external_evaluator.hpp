#pragma once

#include <string>
#include <sys/types.h>
#include <vector>

#include "sanas/evaluation.hpp"

namespace sanas {

// Drives a child process over line-delimited JSON. One request object per
// line on the child's stdin; the child answers each with one response line
// on its stdout, in any order. Responses are matched by id; the first
// response per id wins, later duplicates are dropped (so retries are safe
// against slow-but-alive children).
//
//   request:  {"id":n, "genome":"...", "resolution":px, "objectives":[...]}
//   response: {"id":n, "accuracy":a, "extras":{"name":value, ...}}
//
// A request unanswered past the deadline is re-sent up to max_retries times,
// then EvalTimeout. Child stdout closing with requests pending raises
// ChildCrashed; a stdout line that is not a well-formed response raises
// MalformedResponse.
class ExternalEvaluator final : public Evaluator {
public:
    struct Options {
        std::string command;        // run via /bin/sh -c
        double timeout_s = 86400.0; // per-request answer deadline
        int max_retries = 3;
    };

    explicit ExternalEvaluator(Options opt);
    ~ExternalEvaluator() override;

    ExternalEvaluator(const ExternalEvaluator&) = delete;
    ExternalEvaluator& operator=(const ExternalEvaluator&) = delete;

    std::string id() const override { return "external"; }
    std::vector<EvalResult> evaluate(const std::vector<EvalRequest>& batch) override;

private:
    void spawn();
    void send_line(const std::string& line);
    void shutdown() noexcept;

    Options opt_;
    pid_t pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string rx_buffer_;
};

} // namespace sanas
