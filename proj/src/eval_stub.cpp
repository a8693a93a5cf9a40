#include "sanas/eval_stub.hpp"

#include <csignal>
#include <cstdlib>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "sanas/errors.hpp"
#include "sanas/genome.hpp"

namespace sanas {

using nlohmann::json;

namespace {

extern "C" void stub_terminate(int) { std::_Exit(0); }

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n' << std::flush; }

json error_line(const std::string& what, const std::string& line) {
    return json{{"error", what}, {"line", line}};
}

} // namespace

int run_eval_stub(const StubOptions& opt, std::istream& in, std::ostream& out) {
    // The parent tears the stub down with SIGTERM after closing stdin; exit
    // cleanly instead of dying with a signal status.
    std::signal(SIGTERM, stub_terminate);

    std::vector<json> window;
    auto flush_window = [&] {
        for (auto it = window.rbegin(); it != window.rend(); ++it) emit(out, *it);
        window.clear();
    };
    auto respond = [&](json j) {
        if (opt.shuffle_window > 1) {
            window.push_back(std::move(j));
            if (window.size() == static_cast<std::size_t>(opt.shuffle_window)) flush_window();
        } else {
            emit(out, j);
        }
    };

    long request_index = -1;  // counts well-formed requests, 0-based
    bool dropped = false;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        json req;
        try {
            req = json::parse(line);
        } catch (const json::exception&) {
            emit(out, error_line("malformed request", line));
            continue;
        }
        if (!req.is_object() || !req.contains("id") || !req["id"].is_number_unsigned() ||
            !req.contains("genome") || !req["genome"].is_string()) {
            emit(out, error_line("missing id or genome", line));
            continue;
        }

        ++request_index;
        if (!dropped && request_index == opt.drop_once) {
            dropped = true;
            continue;
        }

        Genome g;
        try {
            g = decode_text(req["genome"].get<std::string>());
        } catch (const Error& e) {
            emit(out, error_line(std::string("bad genome: ") + e.what(), line));
            continue;
        }

        json resp;
        resp["id"] = req["id"];
        resp["accuracy"] = synthetic_accuracy(g, opt.synthetic);
        resp["extras"] = json::object();
        respond(std::move(resp));
    }
    flush_window();
    return 0;
}

} // namespace sanas
