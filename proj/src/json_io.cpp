#include "irl_lab/json_io.hpp"

#include <filesystem>
#include <fstream>

#include "irl_lab/errors.hpp"

namespace irl_lab {

using nlohmann::json;
namespace fs = std::filesystem;

json instance_to_json(const IrlInstance& inst) {
    json j;
    j["n"] = inst.n;
    j["k"] = inst.k;
    j["gamma"] = inst.gamma;
    json trans = json::array();
    for (const auto& t : inst.transitions) {
        json m = json::array();
        for (int i = 0; i < t.n; ++i) {
            json row = json::array();
            for (int c = 0; c < t.n; ++c) row.push_back(t.p(i, c));
            m.push_back(std::move(row));
        }
        trans.push_back(std::move(m));
    }
    j["transitions"] = std::move(trans);
    j["reward"] = inst.certified_reward ? json(*inst.certified_reward) : json(nullptr);
    j["beta"] = inst.certified_beta ? json(*inst.certified_beta) : json(nullptr);
    return j;
}

IrlInstance instance_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    const double gamma = j.at("gamma").get<double>();
    std::vector<StochasticMatrix> trans;
    for (const auto& m : j.at("transitions")) {
        Mat mat(n, n);
        int i = 0;
        for (const auto& row : m) {
            int c = 0;
            for (const auto& v : row) mat(i, c++) = v.get<double>();
            ++i;
        }
        trans.push_back(validate_stochastic(mat));
    }
    std::optional<Vec> reward;
    if (!j.at("reward").is_null()) reward = j.at("reward").get<Vec>();
    std::optional<double> beta;
    if (!j.at("beta").is_null()) beta = j.at("beta").get<double>();
    return make_instance(n, k, gamma, std::move(trans), std::move(reward), beta);
}

void save_instance(const IrlInstance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_instance: cannot open " + path);
    out << instance_to_json(inst).dump(2) << "\n";
}

IrlInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_instance: cannot open " + path);
    json j;
    in >> j;
    return instance_from_json(j);
}

namespace {

const char* kind_name(CodeKind k) {
    switch (k) {
        case CodeKind::Simplex: return "simplex";
        case CodeKind::Icosahedron: return "icosahedron";
        case CodeKind::Other: break;
    }
    return "other";
}

CodeKind kind_from_name(const std::string& s) {
    if (s == "simplex") return CodeKind::Simplex;
    if (s == "icosahedron") return CodeKind::Icosahedron;
    throw Error("unknown code kind: " + s);
}

}  // namespace

json code_to_json(const SphericalCode& code) {
    json pts = json::array();
    for (const Vec& p : code.points) pts.push_back(p);
    return json{{"dim", code.dim}, {"cos_theta", code.cos_theta}, {"points", std::move(pts)}};
}

json config_to_json(const EnsembleConfig& cfg) {
    return json{{"n", cfg.n},     {"gamma", cfg.gamma}, {"beta", cfg.beta},
                {"eps", cfg.eps}, {"theta", cfg.theta}, {"code", kind_name(cfg.code_kind)}};
}

EnsembleConfig config_from_json(const json& j) {
    return make_config(j.at("n").get<int>(), j.at("gamma").get<double>(),
                       j.at("beta").get<double>(), j.at("eps").get<double>(),
                       kind_from_name(j.at("code").get<std::string>()));
}

json report_to_json(const VerificationReport& rep) {
    json failures = json::array();
    for (const auto& f : rep.failures)
        failures.push_back(json{{"i", f.i}, {"j", f.j}, {"value", f.value}, {"what", f.what}});
    return json{{"beta", rep.beta},
                {"own_margins", rep.own_margins},
                {"reward_norms", rep.reward_norms},
                {"worst_cross_margin", rep.worst_cross_margin},
                {"own_ok", rep.own_ok},
                {"cross_ok", rep.cross_ok},
                {"norms_ok", rep.norms_ok},
                {"pass", rep.pass()},
                {"failures", std::move(failures)}};
}

std::vector<std::string> write_ensemble_dir(const std::vector<HardInstance>& ensemble,
                                            const VerificationReport& rep,
                                            const std::string& dir) {
    fs::create_directories(dir);
    std::vector<std::string> files;
    for (const auto& hi : ensemble) {
        char name[64];
        std::snprintf(name, sizeof name, "instance_%03d.json", hi.facet_index);
        save_instance(hi.instance, (fs::path(dir) / name).string());
        files.emplace_back(name);
    }
    json manifest;
    manifest["config"] = ensemble.empty() ? json(nullptr) : config_to_json(ensemble[0].config);
    manifest["report"] = report_to_json(rep);
    manifest["files"] = files;
    std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
    if (!out) throw IoError("write_ensemble_dir: cannot write manifest in " + dir);
    out << manifest.dump(2) << "\n";
    return files;
}

LoadedEnsemble load_ensemble_dir(const std::string& dir) {
    std::ifstream in(fs::path(dir) / "manifest.json");
    if (!in) throw IoError("load_ensemble_dir: missing manifest.json in " + dir);
    json manifest;
    in >> manifest;
    LoadedEnsemble out;
    out.config = config_from_json(manifest.at("config"));
    for (const auto& f : manifest.at("files"))
        out.instances.push_back(load_instance((fs::path(dir) / f.get<std::string>()).string()));
    return out;
}

ExperimentConfig experiment_config_from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("n")) cfg.n = j.at("n").get<int>();
    if (j.contains("k")) cfg.k = j.at("k").get<int>();
    if (j.contains("gamma")) cfg.gamma = j.at("gamma").get<double>();
    if (j.contains("target_beta")) cfg.target_beta = j.at("target_beta").get<double>();
    if (j.contains("beta_window")) cfg.beta_window = j.at("beta_window").get<double>();
    if (j.contains("m_grid")) cfg.m_grid = j.at("m_grid").get<std::vector<long long>>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("trajectory_length"))
        cfg.trajectory_length = j.at("trajectory_length").get<int>();
    if (j.contains("solvers")) cfg.solvers = j.at("solvers").get<std::vector<std::string>>();
    if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("upper_line") && !j.at("upper_line").is_null())
        cfg.upper_line = j.at("upper_line").get<double>();
    if (j.contains("out_csv")) cfg.out_csv = j.at("out_csv").get<std::string>();
    if (j.contains("out_plot")) cfg.out_plot = j.at("out_plot").get<std::string>();
    if (j.contains("fresh_instance")) cfg.fresh_instance = j.at("fresh_instance").get<bool>();
    if (j.contains("smoothing")) cfg.smoothing = j.at("smoothing").get<double>();
    if (j.contains("ng_lambda")) cfg.ng_lambda = j.at("ng_lambda").get<double>();
    if (j.contains("ng_r_max")) cfg.ng_r_max = j.at("ng_r_max").get<double>();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_experiment_config: cannot open " + path);
    json j;
    in >> j;
    return experiment_config_from_json(j);
}

}  // namespace irl_lab
