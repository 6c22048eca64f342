#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hessmap/run.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Apply --n / --precision overrides by rewriting the document, so the config
// hash embedded in outputs reflects what actually ran.
std::string apply_overrides(const std::string& text, int n_override,
                            const std::string& precision_override) {
    hessmap::json doc = hessmap::json::parse(text);
    if (n_override > 0) doc["n"] = n_override;
    if (!precision_override.empty()) {
        std::string mode = precision_override;
        int digits = 0;
        if (auto pos = mode.find(':'); pos != std::string::npos) {
            digits = std::stoi(mode.substr(pos + 1));
            mode = mode.substr(0, pos);
        }
        doc["precision"]["mode"] = mode;
        if (digits > 0) doc["precision"]["digits"] = digits;
    }
    return doc.dump();
}

// Subcommands other than `repro` select one output kind; configs without an
// output of that kind get a default emitter added.
void focus_outputs(hessmap::json& doc, const std::string& kind, const std::string& default_path) {
    hessmap::json kept = hessmap::json::array();
    if (doc.contains("outputs"))
        for (auto& o : doc["outputs"])
            if (o.value("kind", "") == kind) kept.push_back(o);
    if (kept.empty()) kept.push_back({{"kind", kind}, {"path", default_path}});
    doc["outputs"] = kept;
}

void print_report(const hessmap::RunReport& rep) {
    for (const std::string& p : rep.outputs) std::cout << "wrote " << p << "\n";
    std::cout << "source " << hessmap::source_name(rep.source) << "\n";
    if (rep.condition_estimate > 0)
        std::cout << "condition " << hessmap::format_double(rep.condition_estimate) << "\n";
    if (!rep.limits_provenance.empty()) std::cout << "limits " << rep.limits_provenance << "\n";
    if (rep.sup_diff)
        std::cout << "sup_diff " << hessmap::format_double(*rep.sup_diff) << "\n";
    if (rep.capacity_error)
        std::cout << "capacity_error " << hessmap::format_double(*rep.capacity_error) << "\n";
    for (const std::string& n : rep.notes) std::cout << "note " << n << "\n";
    std::cout << "elapsed " << hessmap::format_double(rep.seconds) << "s\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hessmap: exterior Riemann maps from Hessenberg sections"};
    app.require_subcommand(1);

    std::string config_path, out_dir, precision_override, recipe;
    int n_override = 0;
    if (const char* env = std::getenv("HESSMAP_OUT_DIR")) out_dir = env;

    struct Cmd {
        CLI::App* sub;
        std::string kind;  // empty = run config as-is
        std::string default_path;
    };
    std::vector<Cmd> cmds;
    auto add_cmd = [&](const char* name, const char* desc, const char* kind,
                       const char* default_path) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("config", config_path, "JSON run configuration")->required();
        sub->add_option("--n", n_override, "override Hessenberg size n");
        sub->add_option("--out-dir", out_dir, "output directory");
        sub->add_option("--precision", precision_override,
                        "override precision: double | extended[:digits]");
        cmds.push_back({sub, kind, default_path});
    };
    add_cmd("moments", "export the moment matrix", "moments", "moments.csv");
    add_cmd("hessenberg", "export the Hessenberg section", "hessenberg", "hessenberg.csv");
    add_cmd("diagnostics", "export Toeplitz deviation norms", "diagnostics", "diagnostics.csv");
    add_cmd("capacity", "export the capacity estimate", "capacity", "capacity.csv");
    add_cmd("map", "export a boundary image of h_n", "boundary", "boundary.csv");
    add_cmd("grid", "export equipotential images", "grid", "grid.csv");

    CLI::App* repro = app.add_subcommand("repro", "run a named figure/table recipe");
    repro->add_option("recipe", recipe,
                      "example1-table | cross-9x9 | cross-theta | drop-boundary | spiral-boundary")
        ->required();
    repro->add_option("--out-dir", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (repro->parsed()) {
            print_report(hessmap::run_recipe(recipe, out_dir));
            return 0;
        }
        for (const Cmd& c : cmds) {
            if (!c.sub->parsed()) continue;
            std::string text = apply_overrides(read_file(config_path), n_override,
                                               precision_override);
            hessmap::json doc = hessmap::json::parse(text);
            focus_outputs(doc, c.kind, c.default_path);
            hessmap::RunConfig cfg = hessmap::parse_config(doc.dump());
            print_report(hessmap::run(cfg, out_dir));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
