#include "sanas/external_evaluator.hpp"

#include <cerrno>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <map>
#include <nlohmann/json.hpp>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "sanas/errors.hpp"

namespace sanas {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

ExternalEvaluator::ExternalEvaluator(Options opt) : opt_(std::move(opt)) {
    if (opt_.command.empty()) throw InvalidConfig("external evaluator needs a command");
    if (!(opt_.timeout_s > 0)) throw InvalidConfig("evaluator timeout must be positive");
    if (opt_.max_retries < 0) throw InvalidConfig("evaluator retry count must be non-negative");
    // A child dying mid-write must surface as EPIPE, not kill the process.
    std::signal(SIGPIPE, SIG_IGN);
}

ExternalEvaluator::~ExternalEvaluator() { shutdown(); }

void ExternalEvaluator::spawn() {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
        throw ChildCrashed("pipe: " + std::string(std::strerror(errno)));

    pid_ = fork();
    if (pid_ < 0) throw ChildCrashed("fork: " + std::string(std::strerror(errno)));
    if (pid_ == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", opt_.command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    to_child_ = to_child[1];
    from_child_ = from_child[0];
    fcntl(from_child_, F_SETFL, O_NONBLOCK);
}

void ExternalEvaluator::send_line(const std::string& line) {
    const char* data = line.data();
    std::size_t remaining = line.size();
    while (remaining > 0) {
        ssize_t n = write(to_child_, data, remaining);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw ChildCrashed("write to child failed: " + std::string(std::strerror(errno)));
        }
        data += n;
        remaining -= static_cast<std::size_t>(n);
    }
}

void ExternalEvaluator::shutdown() noexcept {
    if (to_child_ >= 0) {
        close(to_child_);  // EOF lets a well-behaved child exit on its own
        to_child_ = -1;
    }
    if (from_child_ >= 0) {
        close(from_child_);
        from_child_ = -1;
    }
    if (pid_ > 0) {
        for (int i = 0; i < 20; ++i) {  // ~2 s of grace
            int status = 0;
            if (waitpid(pid_, &status, WNOHANG) == pid_) {
                pid_ = -1;
                return;
            }
            usleep(100000);
        }
        kill(pid_, SIGTERM);
        int status = 0;
        waitpid(pid_, &status, 0);
        pid_ = -1;
    }
}

namespace {

std::string serialize_request(const EvalRequest& req) {
    json j;
    j["id"] = req.id;
    j["genome"] = req.genome_text;
    j["resolution"] = req.resolution_px;
    j["objectives"] = req.objectives;
    return j.dump() + "\n";
}

// A response must carry an unsigned id and a finite accuracy in [0,1];
// extras, when present, must be an object of finite numbers.
EvalResult parse_response(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception&) {
        throw MalformedResponse(line);
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_number_unsigned() ||
        !j.contains("accuracy") || !j["accuracy"].is_number())
        throw MalformedResponse(line);
    EvalResult r;
    r.id = j["id"].get<std::uint64_t>();
    r.accuracy = j["accuracy"].get<double>();
    if (!std::isfinite(r.accuracy) || r.accuracy < 0.0 || r.accuracy > 1.0)
        throw MalformedResponse(line);
    if (j.contains("extras")) {
        if (!j["extras"].is_object()) throw MalformedResponse(line);
        for (const auto& [key, value] : j["extras"].items()) {
            if (!value.is_number() || !std::isfinite(value.get<double>()))
                throw MalformedResponse(line);
            r.extras[key] = value.get<double>();
        }
    }
    r.evaluator_id = "external";
    return r;
}

} // namespace

std::vector<EvalResult> ExternalEvaluator::evaluate(const std::vector<EvalRequest>& batch) {
    if (pid_ < 0) spawn();

    struct Pending {
        const EvalRequest* req;
        int sends;
        Clock::time_point deadline;
        Clock::time_point first_send;
    };
    const auto timeout = std::chrono::duration<double>(opt_.timeout_s);

    std::map<std::uint64_t, Pending> pending;
    for (const auto& req : batch) {
        send_line(serialize_request(req));
        const auto now = Clock::now();
        pending[req.id] = Pending{&req, 1, now + std::chrono::duration_cast<Clock::duration>(timeout), now};
    }

    std::map<std::uint64_t, EvalResult> done;
    char chunk[4096];
    while (!pending.empty()) {
        auto now = Clock::now();

        // Expired requests: resend while retries remain, otherwise give up.
        for (auto& [rid, p] : pending) {
            if (now < p.deadline) continue;
            if (p.sends > opt_.max_retries) throw EvalTimeout(rid);
            send_line(serialize_request(*p.req));
            ++p.sends;
            p.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(timeout);
        }

        auto next_deadline = Clock::time_point::max();
        for (const auto& [rid, p] : pending) next_deadline = std::min(next_deadline, p.deadline);
        const auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(next_deadline - Clock::now());
        const int poll_ms = static_cast<int>(std::clamp<long long>(wait.count() + 1, 1, 60000));

        pollfd pfd{from_child_, POLLIN, 0};
        const int rc = poll(&pfd, 1, poll_ms);
        if (rc < 0) {
            if (errno == EINTR) continue;
            throw ChildCrashed("poll: " + std::string(std::strerror(errno)));
        }
        if (rc == 0) continue;  // deadline pass handles it

        const ssize_t n = read(from_child_, chunk, sizeof chunk);
        if (n < 0) {
            if (errno == EINTR || errno == EAGAIN) continue;
            throw ChildCrashed("read from child failed: " + std::string(std::strerror(errno)));
        }
        if (n == 0) {
            int status = 0;
            waitpid(pid_, &status, 0);
            pid_ = -1;
            throw ChildCrashed("evaluator closed its stdout with " +
                               std::to_string(pending.size()) + " request(s) pending");
        }
        rx_buffer_.append(chunk, static_cast<std::size_t>(n));

        std::size_t start = 0;
        for (std::size_t nl = rx_buffer_.find('\n', start); nl != std::string::npos;
             nl = rx_buffer_.find('\n', start)) {
            std::string line = rx_buffer_.substr(start, nl - start);
            start = nl + 1;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            EvalResult r = parse_response(line);
            auto it = pending.find(r.id);
            if (it == pending.end()) continue;  // late duplicate from a retry
            r.wall_time_s = std::chrono::duration<double>(Clock::now() - it->second.first_send).count();
            done.emplace(r.id, std::move(r));
            pending.erase(it);
        }
        rx_buffer_.erase(0, start);
    }

    std::vector<EvalResult> out;
    out.reserve(batch.size());
    for (const auto& req : batch) out.push_back(std::move(done.at(req.id)));
    return out;
}

} // namespace sanas
