// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/cli/cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <map>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "iyp/eval/report.hpp"
#include "iyp/graph/loader.hpp"
#include "iyp/service/service.hpp"

namespace iyp::cli {

namespace {

using nlohmann::json;

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) {
    g_stop.store(true);
}

/// A failure with a chosen exit code and message.
struct Exit {
    int code;
    std::string message;
};

std::string dump(const json& j, bool pretty) {
    return pretty ? j.dump(2) : j.dump();
}

service::Config load(const std::string& path) {
    return service::load_config(path);
}

int cmd_validate_graph(const std::string& in, bool pretty, std::ostream& out) {
    const auto g = graph::load_graph_file(in);
    std::map<std::string, std::size_t> labels;
    std::map<std::string, std::size_t> types;
    for (const auto& n : g.nodes()) {
        for (const auto& l : n.labels) {
            ++labels[l];
        }
    }
    for (const auto& e : g.edges()) {
        ++types[e.type];
    }
    out << dump({{"valid", true},
                 {"nodes", g.node_count()},
                 {"edges", g.edge_count()},
                 {"labels", labels},
                 {"relationship_types", types}},
                pretty)
        << "\n";
    return kExitOk;
}

int cmd_ask(const std::string& config_path, const std::string& question, const json& options, bool pretty,
            std::ostream& out, std::ostream& err) {
    const auto cfg = load(config_path);
    service::Service svc(cfg.service, service::version());
    svc.set_pipeline(service::Pipeline::load(cfg));
    json request{{"question", question}};
    if (!options.empty()) {
        request["options"] = options;
    }
    const auto r = svc.handle_ask(request);
    if (r.status == 200) {
        out << dump(r.body, pretty) << "\n";
        return kExitOk;
    }
    err << dump(r.body, pretty) << "\n";
    return r.status == 400 ? kExitUsage : kExitFailure;
}

int cmd_index(const std::string& config_path, std::string out_path, bool pretty, std::ostream& out) {
    const auto cfg = load(config_path);
    if (out_path.empty()) {
        if (!cfg.index_path) {
            throw Exit{kExitUsage, "index: --out is required when the config has no index_path"};
        }
        out_path = cfg.index_path->string();
    }
    const auto index = service::build_index_for(cfg);
    retrieval::save_index(index, out_path);
    out << dump({{"index", out_path}, {"entries", index.size()}, {"dimension", index.dimension()}}, pretty) << "\n";
    return kExitOk;
}

int cmd_eval(const std::string& config_path, const std::string& dataset_path, const std::string& out_path,
             const std::string& metrics, bool pretty, std::ostream& out, std::ostream& err) {
    const auto cfg = load(config_path);
    eval::MetricSelection selection = cfg.eval.metrics;
    if (!metrics.empty()) {
        try {
            selection = eval::parse_metrics(metrics);
        } catch (const std::invalid_argument& e) {
            throw Exit{kExitUsage, std::string("eval: --metrics: ") + e.what()};
        }
    }
    const auto dataset = eval::load_dataset(dataset_path);
    const auto pipeline = service::Pipeline::load(cfg);
    const auto report = pipeline->evaluate(dataset, selection);
    const auto csv_path = eval::write_report(report, out_path);
    const std::string table = eval::summary_table(report);
    if (pretty) {
        out << table;
    } else {
        err << table;
        out << json{{"report", out_path},
                    {"csv", csv_path.string()},
                    {"records", report.records.size()},
                    {"unevaluable", report.unevaluable.size()}}
                   .dump()
            << "\n";
    }
    return kExitOk;
}

int cmd_serve(const std::string& config_path, const std::string& bind, int port, std::ostream& out,
              std::ostream& err) {
    const auto cfg = load(config_path);
    service::ServiceSettings settings = cfg.service;
    if (!bind.empty()) {
        settings.bind = bind;
    }
    if (port >= 0) {
        settings.port = port;
    }
    service::Service svc(settings, service::version());
    service::HttpServer server(svc);
    const int bound = server.bind(settings.bind, settings.port);
    g_stop.store(false);
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::atomic<bool> load_failed{false};
    std::thread listener([&] { server.listen(); });
    server.wait_until_ready();
    out << json{{"event", "listening"}, {"url", "http://" + settings.bind + ":" + std::to_string(bound)}}.dump()
        << std::endl;
    std::thread loader([&] {
        try {
            svc.set_pipeline(service::Pipeline::load(cfg));
            out << json{{"event", "ready"}}.dump() << std::endl;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << std::endl;
            load_failed.store(true);
        }
    });
    while (!g_stop.load() && !load_failed.load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    loader.join();
    server.stop();
    listener.join();
    std::signal(SIGINT, SIG_DFL);
    std::signal(SIGTERM, SIG_DFL);
    return load_failed.load() ? kExitFailure : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Graph-RAG question answering over the Internet Yellow Pages", "chatiyp"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    app.set_version_flag("--version", service::version());

    std::string config = "./chatiyp.json";
    bool pretty = false;
    auto add_common = [&](CLI::App* sub, bool with_config) {
        if (with_config) {
            sub->add_option("--config", config, "Config file")->capture_default_str();
        }
        sub->add_flag("--pretty", pretty, "Human-readable output");
    };

    auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
    std::string bind;
    int port = -1;
    add_common(serve, true);
    serve->add_option("--bind", bind, "Override service.bind");
    serve->add_option("--port", port, "Override service.port (0 picks a free port)")->check(CLI::Range(0, 65535));

    auto* ask = app.add_subcommand("ask", "Answer one question");
    std::string question;
    std::optional<int> k;
    std::optional<int> top_n;
    std::optional<int> min_rows;
    add_common(ask, true);
    ask->add_option("question", question, "Natural language question")->required();
    ask->add_option("--k", k, "Vector hits on fallback");
    ask->add_option("--top-n", top_n, "Candidates kept by rerank");
    ask->add_option("--min-rows", min_rows, "Cypher rows below which the vector fallback runs");

    auto* index = app.add_subcommand("index", "Build and save the vector index");
    std::string index_out;
    add_common(index, true);
    index->add_option("--out", index_out, "Index file (defaults to index_path)");

    auto* ev = app.add_subcommand("eval", "Evaluate on a dataset");
    std::string dataset;
    std::string report_out;
    std::string metrics;
    add_common(ev, true);
    ev->add_option("--dataset", dataset, "JSONL dataset")->required();
    ev->add_option("--out", report_out, "Report JSON path; the CSV goes next to it")->required();
    ev->add_option("--metrics", metrics, "Subset of bleu,rouge,embed,geval");

    auto* validate = app.add_subcommand("validate-graph", "Check an NDJSON graph dump");
    std::string graph_in;
    add_common(validate, false);
    validate->add_option("--in", graph_in, "NDJSON file")->required();

    std::vector<std::string> argv_store{"chatiyp"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate_graph(graph_in, pretty, out);
        }
        if (ask->parsed()) {
            json options = json::object();
            if (k) {
                options["k"] = *k;
            }
            if (top_n) {
                options["top_n"] = *top_n;
            }
            if (min_rows) {
                options["min_rows"] = *min_rows;
            }
            return cmd_ask(config, question, options, pretty, out, err);
        }
        if (index->parsed()) {
            return cmd_index(config, index_out, pretty, out);
        }
        if (ev->parsed()) {
            return cmd_eval(config, dataset, report_out, metrics, pretty, out, err);
        }
        return cmd_serve(config, bind, port, out, err);
    } catch (const Exit& e) {
        err << "error: " << e.message << "\n";
        if (e.code == kExitUsage) {
            err << app.help();
        }
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace iyp::cli
