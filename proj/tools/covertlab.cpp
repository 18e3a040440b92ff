// covertlab: design, simulate, and audit low-weight concatenated codes for
// covert communication over binary symmetric channels.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>

#include "covert/adversary.hpp"
#include "covert/channel.hpp"
#include "covert/codec.hpp"
#include "covert/harness.hpp"
#include "covert/verify.hpp"

using namespace covert;
using Json = nlohmann::json;

namespace {

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw ConfigError("cannot open output file '" + path + "'");
    return file;
}

Json k1_solution_json(const design::K1Solution& sol) {
    return Json{{"k1", sol.k1},
                {"d10", sol.d10},
                {"d11", sol.d11},
                {"binding_constraint", sol.binding_constraint},
                {"phi", {sol.phi_values[0], sol.phi_values[1], sol.phi_values[2]}},
                {"attaining_g_index", sol.attaining_g_index}};
}

Json params_json(const design::CodeParams& cp) {
    return Json{{"n", cp.n},
                {"L", cp.L},
                {"B", cp.B},
                {"m", cp.m},
                {"l1", cp.l1},
                {"l2", cp.l2},
                {"lambda", cp.lambda},
                {"k1", cp.k1},
                {"k1_realized", cp.k1_realized},
                {"k2", cp.k2},
                {"r_u", cp.r_u},
                {"r", cp.r},
                {"r_hat", cp.r_hat},
                {"r_eff", cp.r_eff},
                {"rho", cp.rho},
                {"dz1", cp.dz1},
                {"dy1", cp.dy1},
                {"dxz10", cp.dxz10},
                {"dxz11", cp.dxz11},
                {"dxy10", cp.dxy10},
                {"dxy11", cp.dxy11},
                {"off_nominal", cp.off_nominal},
                {"diagnostics", cp.diagnostics}};
}

int cmd_design(double p, double q, double eps, double delta, const std::string& mode_name,
               std::optional<int> L, std::optional<int> B, const std::string& out_path) {
    if (!(p < q)) {
        std::cerr << "design: requires p < q\n";
        return 2;
    }
    const design::ChannelModel ch{p, q, eps, delta};
    ch.validate();
    const auto mode = design::mode_from_name(mode_name);
    Json out;
    out["flags"] = {{"p", p}, {"q", q}, {"eps", eps}, {"delta", delta}, {"mode", mode_name}};
    out["k2"] = design::design_k2(q, eps, mode);
    out["r_u"] = design::design_ru(p, q, eps, mode);
    const auto sol = design::solve_k1(ch, mode);
    out["k1_solution"] = k1_solution_json(sol);
    out["certificates"] = {
        {"k1_phi1", sol.k1 * sol.phi_values[0]},
        {"k1_phi2", sol.k1 * sol.phi_values[1]},
        {"k1_phi3", sol.k1 * sol.phi_values[2]},
        {"xi_plus_delta", {1.5 + delta, 0.5 + delta, 0.5 + delta}},
    };
    out["complexity_exponent"] = out["r_u"].get<double>() * sol.k1 + 1.0;
    if (L && B) {
        const auto cp = design::derive_params(ch, *L, *B, mode);
        out["params"] = params_json(cp);
    }
    std::ofstream file;
    open_out(file, out_path) << out.dump(2) << '\n';
    return 0;
}

codec::ConcatCode code_from_config(const harness::ExperimentConfig& cfg,
                                   std::optional<std::uint64_t> seed_flag) {
    const auto params = cfg.derive();
    return codec::build_code(params, seed_flag.value_or(cfg.master_seed));
}

int cmd_encode(const std::string& config_path, std::optional<std::uint64_t> seed,
               const std::string& message_hex, int t, const std::string& out_path) {
    const auto cfg = harness::load_config(config_path);
    const auto code = code_from_config(cfg, seed);
    BitVec msg(static_cast<std::size_t>(code.message_bits()));
    if (t == 1) msg = BitVec::from_hex(message_hex, code.message_bits());
    const BitVec x = codec::encode(code, msg, t);
    Json out;
    out["flags"] = {{"config", config_path}, {"t", t}};
    out["seed"] = seed.value_or(cfg.master_seed);
    out["n"] = code.params.n;
    out["message_bits"] = code.message_bits();
    out["codeword_hex"] = x.to_hex();
    out["codeword_weight"] = x.weight();
    std::ofstream file;
    open_out(file, out_path) << out.dump(2) << '\n';
    return 0;
}

int cmd_decode(const std::string& config_path, std::optional<std::uint64_t> seed,
               const std::string& y_hex, const std::string& out_path) {
    const auto cfg = harness::load_config(config_path);
    const auto code = code_from_config(cfg, seed);
    const BitVec y = BitVec::from_hex(y_hex, static_cast<std::size_t>(code.params.n));
    const auto res = codec::decode(code, y);
    Json out;
    out["flags"] = {{"config", config_path}};
    out["seed"] = seed.value_or(cfg.master_seed);
    out["t_hat"] = res.t_hat;
    out["rs_status"] = res.rs_status == codec::TransmissionResult::RsStatus::ok ? "ok"
                       : res.rs_status == codec::TransmissionResult::RsStatus::failure
                           ? "failure"
                           : "not_attempted";
    out["chunk_outcomes"] = codec::outcome_string(res, code.params.m);
    if (res.message) out["message_hex"] = res.message->to_hex();
    out["decode_work"] = res.decode_work;
    std::ofstream file;
    open_out(file, out_path) << out.dump(2) << '\n';
    return 0;
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 const std::string& out_path) {
    auto cfg = harness::load_config(config_path);
    if (seed) cfg.master_seed = *seed;
    if (!out_path.empty()) cfg.output_path = out_path;
    harness::RunRecord rec;
    switch (cfg.kind) {
        case harness::Kind::reliability: rec = harness::run_reliability(cfg); break;
        case harness::Kind::covertness: rec = harness::run_covertness(cfg); break;
        case harness::Kind::lemma1: rec = harness::run_lemma1(cfg); break;
        default:
            throw ConfigError("simulate: config kind must be reliability|covertness|lemma1");
    }
    std::cout << rec.summary_json().dump(2) << '\n';
    return rec.all_pass ? 0 : 1;
}

int cmd_detect(const std::string& config_path, std::optional<std::uint64_t> seed,
               const std::string& out_path) {
    auto cfg = harness::load_config(config_path);
    if (seed) cfg.master_seed = *seed;
    if (cfg.trials < 1000)
        throw ConfigError("detect: /trials must be >= 1000");
    const auto params = cfg.derive();
    const std::string detector = cfg.extra.value("detector", "radiometer");
    const bool adversarial = cfg.extra.value("adversarial_codebook", false);
    const auto code = adversarial
                          ? adversary::build_concentrated_code(params, cfg.master_seed)
                          : codec::build_code(params, cfg.master_seed);
    adversary::Detector fn;
    if (detector == "radiometer") {
        const auto d = adversary::radiometer_design(params.n, params.channel.q, params.rho);
        fn = [d](const BitVec& z) {
            return static_cast<std::int64_t>(z.weight()) > d.threshold;
        };
    } else if (detector == "chunk_weight") {
        std::optional<double> alpha;
        if (cfg.extra.contains("per_chunk_alpha"))
            alpha = cfg.extra.at("per_chunk_alpha").get<double>();
        const auto det = adversary::chunk_weight_detector(params, alpha);
        fn = [det](const BitVec& z) { return det.accuse(z); };
    } else {
        throw ConfigError("detect: /extra/detector must be radiometer|chunk_weight");
    }
    const auto rep = adversary::detect_experiment(
        fn, detector + (adversarial ? "/concentrated" : "/spread"), code, cfg.trials,
        cfg.master_seed);
    std::ofstream file;
    open_out(file, out_path) << rep.to_json() << '\n';
    std::cerr << "alpha+beta = " << rep.sum() << " over " << rep.trials << " trials\n";
    return 0;
}

int cmd_lemma1(double p, double delta, const std::string& mode, std::uint64_t seed,
               const std::string& out_path) {
    Json j{{"kind", "lemma1"},
           {"channel", {{"p", p}, {"q", 0.25}, {"eps_d", 0.1}, {"delta", delta}}},
           {"mode", mode},
           {"master_seed", seed}};
    const auto rec = harness::run_lemma1(harness::ExperimentConfig::from_json(j));
    std::ofstream file;
    auto& os = open_out(file, out_path);
    os << "# mode=" << mode << " delta=" << delta << '\n';
    os << "q,eps_d,n,k2,rho,tv,bound,pass\n";
    for (const auto& row : rec.rows)
        os << row["q"].get<double>() << ',' << row["eps_d"].get<double>() << ','
           << row["n"].get<std::int64_t>() << ',' << row["k2"].get<double>() << ','
           << row["rho"].get<double>() << ',' << row["tv"].get<double>() << ','
           << row["bound"].get<double>() << ',' << (row["pass"].get<bool>() ? 1 : 0) << '\n';
    return rec.all_pass ? 0 : 1;
}

int cmd_contour(double p_min, double p_max, double q_min, double q_max, double eps,
                double delta, int steps, const std::string& mode, const std::string& out_path) {
    const auto cells = design::contour_grid(p_min, p_max, q_min, q_max, eps, delta, steps,
                                            design::mode_from_name(mode));
    std::ofstream file;
    auto& os = open_out(file, out_path);
    os << "# eps=" << eps << " delta=" << delta << " steps=" << steps << " mode=" << mode
       << '\n';
    design::write_contour_csv(os, cells);
    return 0;
}

int cmd_verify(const std::string& suite, double p, double q, double eps, double delta,
               std::uint64_t seed, const std::string& out_path) {
    if (suite != "appendix")
        throw ConfigError("verify: unknown suite '" + suite + "' (available: appendix)");
    Json j{{"kind", "verify"},
           {"channel", {{"p", p}, {"q", q}, {"eps_d", eps}, {"delta", delta}}},
           {"mode", "paper"},
           {"master_seed", seed}};
    if (!out_path.empty()) j["output_path"] = out_path;
    const auto rec = harness::run_verify(harness::ExperimentConfig::from_json(j));
    int passed = 0;
    for (const auto& row : rec.rows) {
        const bool ok = row["pass"].get<bool>();
        passed += ok;
        std::cout << (ok ? "pass  " : "FAIL  ") << row["check"].get<std::string>() << '\n';
    }
    std::cout << passed << "/" << rec.rows.size() << " checks passed\n";
    return rec.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covert-communication code laboratory"};
    app.require_subcommand(1);

    // design
    auto* design_cmd = app.add_subcommand("design", "evaluate the closed-form code design");
    double p = 0.05, q = 0.25, eps = 0.1, delta = 0.01;
    std::string mode = "paper", out;
    std::optional<int> L, B;
    std::optional<std::uint64_t> seed;
    design_cmd->add_option("--p", p, "Bob crossover")->required();
    design_cmd->add_option("--q", q, "Willie crossover")->required();
    design_cmd->add_option("--eps", eps, "covertness budget")->required();
    design_cmd->add_option("--delta", delta, "slackness");
    design_cmd->add_option("--mode", mode, "paper|optimal");
    design_cmd->add_option("--L", L, "number of chunks (with --B: derive full params)");
    design_cmd->add_option("--B", B, "chunk length");
    design_cmd->add_option("--seed", seed, "unused here; accepted for uniformity");
    design_cmd->add_option("--out", out, "output path (default stdout)");

    // encode / decode
    auto* enc = app.add_subcommand("encode", "encode a message (or silence) to a codeword");
    std::string enc_config, enc_msg, enc_out;
    std::optional<std::uint64_t> enc_seed;
    int enc_t = 1;
    enc->add_option("--config", enc_config, "experiment config with channel/scale/overrides")
        ->required();
    enc->add_option("--seed", enc_seed, "codebook master seed (defaults to config seed)");
    enc->add_option("--message", enc_msg, "message hex (l1*m bits)");
    enc->add_option("--t", enc_t, "transmission status 0|1")->required();
    enc->add_option("--out", enc_out, "output path");

    auto* dec = app.add_subcommand("decode", "decode a received word");
    std::string dec_config, dec_y, dec_out;
    std::optional<std::uint64_t> dec_seed;
    dec->add_option("--config", dec_config, "experiment config")->required();
    dec->add_option("--seed", dec_seed, "codebook master seed (defaults to config seed)");
    dec->add_option("--y", dec_y, "received word hex (n bits)")->required();
    dec->add_option("--out", dec_out, "output path");

    // simulate / detect
    auto* sim = app.add_subcommand("simulate", "run a reliability/covertness/lemma1 config");
    std::string sim_config, sim_out;
    std::optional<std::uint64_t> sim_seed;
    sim->add_option("--config", sim_config, "config file")->required();
    sim->add_option("--seed", sim_seed, "override master seed");
    sim->add_option("--out", sim_out, "override output path");

    auto* det = app.add_subcommand("detect", "run a detection experiment");
    std::string det_config, det_out;
    std::optional<std::uint64_t> det_seed;
    det->add_option("--config", det_config, "config file")->required();
    det->add_option("--seed", det_seed, "override master seed");
    det->add_option("--out", det_out, "output path");

    // lemma1 / contour / verify
    auto* lem = app.add_subcommand("lemma1", "exact TV sweep against the covertness bound");
    double lem_p = 0.05, lem_delta = 0.01;
    std::string lem_mode = "paper", lem_out;
    std::uint64_t lem_seed = 0;
    lem->add_option("--p", lem_p, "Bob crossover (echoed only)");
    lem->add_option("--delta", lem_delta, "slackness");
    lem->add_option("--mode", lem_mode, "paper|optimal");
    lem->add_option("--seed", lem_seed, "echoed into the record");
    lem->add_option("--out", lem_out, "CSV path");

    auto* con = app.add_subcommand("contour", "complexity exponent grid over (p, q)");
    double cp_min = 0.01, cp_max = 0.45, cq_min = 0.02, cq_max = 0.49;
    double con_eps = 0.1, con_delta = 0.01;
    int con_steps = 20;
    std::string con_mode = "paper", con_out;
    std::optional<std::uint64_t> con_seed;
    con->add_option("--p-min", cp_min);
    con->add_option("--p-max", cp_max);
    con->add_option("--q-min", cq_min);
    con->add_option("--q-max", cq_max);
    con->add_option("--eps", con_eps, "covertness budget");
    con->add_option("--delta", con_delta, "slackness");
    con->add_option("--steps", con_steps, "grid steps per axis");
    con->add_option("--mode", con_mode, "paper|optimal");
    con->add_option("--seed", con_seed, "unused; accepted for uniformity");
    con->add_option("--out", con_out, "CSV path");

    auto* ver = app.add_subcommand("verify", "run a verification oracle suite");
    std::string ver_suite = "appendix", ver_out;
    double vp = 0.05, vq = 0.25, veps = 0.1, vdelta = 0.01;
    std::uint64_t ver_seed = 0;
    ver->add_option("--suite", ver_suite, "suite name (appendix)");
    ver->add_option("--p", vp);
    ver->add_option("--q", vq);
    ver->add_option("--eps", veps);
    ver->add_option("--delta", vdelta);
    ver->add_option("--seed", ver_seed, "echoed into the record");
    ver->add_option("--out", ver_out, "JSONL path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design_cmd->parsed()) return cmd_design(p, q, eps, delta, mode, L, B, out);
        if (enc->parsed()) return cmd_encode(enc_config, enc_seed, enc_msg, enc_t, enc_out);
        if (dec->parsed()) return cmd_decode(dec_config, dec_seed, dec_y, dec_out);
        if (sim->parsed()) return cmd_simulate(sim_config, sim_seed, sim_out);
        if (det->parsed()) return cmd_detect(det_config, det_seed, det_out);
        if (lem->parsed()) return cmd_lemma1(lem_p, lem_delta, lem_mode, lem_seed, lem_out);
        if (con->parsed())
            return cmd_contour(cp_min, cp_max, cq_min, cq_max, con_eps, con_delta, con_steps,
                               con_mode, con_out);
        if (ver->parsed())
            return cmd_verify(ver_suite, vp, vq, veps, vdelta, ver_seed, ver_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
