// Command-line front end: learn a PDFA (batch or search mode) or score traces with a stored model (predict).
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pdfa/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Learn probabilistic deterministic automata by red-blue state merging"};
    app.set_version_flag("--version", "pdfa-learn 1.0");

    std::string input;
    std::string ini_path;
    app.add_option("input", input, "trace file in Abbadingo format")->required();
    app.add_option("--ini", ini_path, "ini file with a [default] section")->check(CLI::ExistingFile);

    // Every parameter is a string-valued long option so that unset flags fall through to the ini file.
    pdfa::Settings overrides;
    std::map<std::string, std::string> raw;
    std::vector<std::string> names = pdfa::parameter_names();
    names.insert(names.end(), {"heuristic_name", "data_name", "apta_file", "print_sinks"});
    for (const auto& name : names) {
        std::string flags = "--" + name;
        if (name == "apta_file") flags += ",--aptafile";
        if (name.find('_') != std::string::npos) {
            std::string dashed = name;
            std::replace(dashed.begin(), dashed.end(), '_', '-');
            flags += ",--" + dashed;
        }
        app.add_option(flags, raw[name], "overrides the ini value");
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& name : names) {
        if (app.get_option("--" + name)->count() > 0) overrides[name] = raw[name];
    }
    overrides["input"] = input;

    try {
        pdfa::Settings ini;
        if (!ini_path.empty()) {
            std::ifstream f(ini_path);
            std::stringstream text;
            text << f.rdbuf();
            ini = pdfa::parse_ini(text.str());
        }
        const pdfa::RunConfig config = pdfa::load_config(ini, overrides);
        return pdfa::run(config, std::cout, std::cerr);
    } catch (const pdfa::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    }
}
