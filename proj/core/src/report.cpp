#include "transmeter/transfer/report.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "transmeter/errors.hpp"

namespace transmeter {

using nlohmann::json;

TrainConfig ablation_config(const TrainConfig& base, AblationVariant variant) {
    TrainConfig cfg = base;
    switch (variant) {
        case AblationVariant::Full:
            break;
        case AblationVariant::NoPretrain:
            cfg.use_pretrained_init = false;
            break;
        case AblationVariant::NoRecon:
            cfg.use_reconstruction = false;
            break;
    }
    return cfg;
}

AblationVariant ablation_from_name(const std::string& name) {
    if (name == "full") return AblationVariant::Full;
    if (name == "no_pretrain") return AblationVariant::NoPretrain;
    if (name == "no_recon") return AblationVariant::NoRecon;
    throw InvalidArgument("unknown ablation variant '" + name +
                          "' (expected full, no_pretrain or no_recon)");
}

std::string ablation_name(AblationVariant variant) {
    switch (variant) {
        case AblationVariant::Full: return "full";
        case AblationVariant::NoPretrain: return "no_pretrain";
        case AblationVariant::NoRecon: return "no_recon";
    }
    return "full";
}

namespace {

json config_to_json(const TrainConfig& cfg) {
    return json{{"alpha", cfg.alpha},
                {"beta", cfg.beta},
                {"seed", cfg.seed},
                {"flip", cfg.flip},
                {"lr", cfg.lr},
                {"per_domain_batch", cfg.per_domain_batch},
                {"max_epochs", cfg.max_epochs},
                {"patience", cfg.patience},
                {"use_pretrained_init", cfg.use_pretrained_init},
                {"use_reconstruction", cfg.use_reconstruction},
                {"validation_fraction", cfg.validation_fraction},
                {"base_seed", cfg.base_seed}};
}

TrainConfig config_from_json(const json& j) {
    TrainConfig cfg;
    cfg.alpha = j.at("alpha").get<double>();
    cfg.beta = j.at("beta").get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.flip = j.at("flip").get<bool>();
    cfg.lr = j.at("lr").get<double>();
    cfg.per_domain_batch = j.at("per_domain_batch").get<std::size_t>();
    cfg.max_epochs = j.at("max_epochs").get<std::size_t>();
    cfg.patience = j.at("patience").get<std::size_t>();
    cfg.use_pretrained_init = j.at("use_pretrained_init").get<bool>();
    cfg.use_reconstruction = j.at("use_reconstruction").get<bool>();
    cfg.validation_fraction = j.at("validation_fraction").get<double>();
    cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
    return cfg;
}

}  // namespace

void write_reports_jsonl(const std::filesystem::path& path,
                         const std::vector<TransferReport>& reports) {
    std::ofstream out(path);
    if (!out) {
        throw LoadError("cannot write report file '" + path.string() + "'");
    }
    for (const TransferReport& r : reports) {
        json j{{"source", r.source_name},
               {"target", r.target_name},
               {"acc_0", r.acc_0},
               {"acc_T", r.acc_T},
               {"transferability", r.transferability},
               {"flip_used", r.flip_used},
               {"cv_score", r.cv_score},
               {"wall_time_seconds", r.wall_time_seconds},
               {"config", config_to_json(r.chosen_config)}};
        out << j.dump() << '\n';
    }
}

std::vector<TransferReport> read_reports_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError("cannot open report file '" + path.string() + "'");
    }
    std::vector<TransferReport> reports;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw LoadError("report file '" + path.string() + "' line " +
                            std::to_string(line_no) + ": " + e.what());
        }
        TransferReport r;
        r.source_name = j.at("source").get<std::string>();
        r.target_name = j.at("target").get<std::string>();
        r.acc_0 = j.at("acc_0").get<double>();
        r.acc_T = j.at("acc_T").get<double>();
        r.transferability = j.at("transferability").get<double>();
        r.flip_used = j.at("flip_used").get<bool>();
        r.cv_score = j.at("cv_score").get<double>();
        r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
        r.chosen_config = config_from_json(j.at("config"));
        reports.push_back(std::move(r));
    }
    return reports;
}

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<TransferReport>& reports) {
    std::ofstream out(path);
    if (!out) {
        throw LoadError("cannot write summary file '" + path.string() + "'");
    }
    out << "source,target,acc_0,acc_T,transferability,flip,alpha,beta,seed,wall_time\n";
    char buf[256];
    for (const TransferReport& r : reports) {
        std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%.10g,%.10g,%d,%g,%g,%llu,%.3f\n",
                      r.source_name.c_str(), r.target_name.c_str(), r.acc_0, r.acc_T,
                      r.transferability, r.flip_used ? 1 : 0, r.chosen_config.alpha,
                      r.chosen_config.beta,
                      static_cast<unsigned long long>(r.chosen_config.seed),
                      r.wall_time_seconds);
        out << buf;
    }
}

}  // namespace transmeter
