#include "transmeter/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <nlohmann/json.hpp>

#include "transmeter/errors.hpp"

namespace transmeter {

using nlohmann::json;

std::string iso_timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

json widths_to_json(const ModelWidths& w) {
    return json{{"source_hidden", w.source_hidden}, {"encoder_hidden", w.encoder_hidden}};
}

ModelWidths widths_from_json(const json& j) {
    ModelWidths w;
    w.source_hidden = j.at("source_hidden").get<std::vector<std::size_t>>();
    w.encoder_hidden = j.at("encoder_hidden").get<std::vector<std::size_t>>();
    return w;
}

json base_to_json(const TrainConfig& c) {
    return json{{"lr", c.lr},
                {"per_domain_batch", c.per_domain_batch},
                {"max_epochs", c.max_epochs},
                {"patience", c.patience},
                {"use_pretrained_init", c.use_pretrained_init},
                {"use_reconstruction", c.use_reconstruction},
                {"validation_fraction", c.validation_fraction}};
}

TrainConfig base_from_json(const json& j) {
    TrainConfig c;
    c.lr = j.at("lr").get<double>();
    c.per_domain_batch = j.at("per_domain_batch").get<std::size_t>();
    c.max_epochs = j.at("max_epochs").get<std::size_t>();
    c.patience = j.at("patience").get<std::size_t>();
    c.use_pretrained_init = j.at("use_pretrained_init").get<bool>();
    c.use_reconstruction = j.at("use_reconstruction").get<bool>();
    c.validation_fraction = j.at("validation_fraction").get<double>();
    return c;
}

}  // namespace

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    json results = json::array();
    for (const PairResult& r : m.results) {
        results.push_back(json{{"source", r.source},
                               {"acc_0", r.acc_0},
                               {"acc_T", r.acc_T},
                               {"transferability", r.transferability},
                               {"flip_used", r.flip_used},
                               {"wall_time_seconds", r.wall_time_seconds}});
    }
    const json j{{"command", m.command},
                 {"registry_path", m.registry_path},
                 {"registry_hash", m.registry_hash},
                 {"target", m.target},
                 {"sources", m.sources},
                 {"grid",
                  json{{"alphas", m.grid.alphas},
                       {"betas", m.grid.betas},
                       {"seeds", m.grid.seeds},
                       {"search_flip", m.grid.search_flip}}},
                 {"base", base_to_json(m.base)},
                 {"widths", widths_to_json(m.widths)},
                 {"split_fraction", m.split_fraction},
                 {"folds", m.folds},
                 {"base_seed", m.base_seed},
                 {"ablation", m.ablation},
                 {"jobs", m.jobs},
                 {"pretrain_missing", m.pretrain_missing},
                 {"pretrain_seed", m.pretrain_seed},
                 {"started_at", m.started_at},
                 {"finished_at", m.finished_at},
                 {"outputs", m.outputs},
                 {"results", results}};

    std::ofstream out(path);
    if (!out) {
        throw LoadError("cannot write manifest '" + path.string() + "'");
    }
    out << j.dump(2) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError("cannot open manifest '" + path.string() + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw LoadError("manifest '" + path.string() + "': " + e.what());
    }

    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.registry_path = j.at("registry_path").get<std::string>();
    m.registry_hash = j.at("registry_hash").get<std::string>();
    m.target = j.at("target").get<std::string>();
    m.sources = j.at("sources").get<std::vector<std::string>>();
    m.grid.alphas = j.at("grid").at("alphas").get<std::vector<double>>();
    m.grid.betas = j.at("grid").at("betas").get<std::vector<double>>();
    m.grid.seeds = j.at("grid").at("seeds").get<std::vector<std::uint64_t>>();
    m.grid.search_flip = j.at("grid").at("search_flip").get<bool>();
    m.base = base_from_json(j.at("base"));
    m.widths = widths_from_json(j.at("widths"));
    m.split_fraction = j.at("split_fraction").get<double>();
    m.folds = j.at("folds").get<int>();
    m.base_seed = j.at("base_seed").get<std::uint64_t>();
    m.ablation = j.at("ablation").get<std::string>();
    m.jobs = j.at("jobs").get<int>();
    m.pretrain_missing = j.at("pretrain_missing").get<bool>();
    m.pretrain_seed = j.at("pretrain_seed").get<std::uint64_t>();
    m.started_at = j.at("started_at").get<std::string>();
    m.finished_at = j.at("finished_at").get<std::string>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    for (const json& r : j.at("results")) {
        PairResult p;
        p.source = r.at("source").get<std::string>();
        p.acc_0 = r.at("acc_0").get<double>();
        p.acc_T = r.at("acc_T").get<double>();
        p.transferability = r.at("transferability").get<double>();
        p.flip_used = r.at("flip_used").get<bool>();
        p.wall_time_seconds = r.at("wall_time_seconds").get<double>();
        m.results.push_back(std::move(p));
    }
    return m;
}

}  // namespace transmeter
