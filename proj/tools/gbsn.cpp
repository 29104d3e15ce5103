#include <CLI11.hpp>

#include <gbsn/errors.hpp>
#include <gbsn/finite_quotient.hpp>
#include <gbsn/graph_of_groups.hpp>
#include <gbsn/hnn.hpp>
#include <gbsn/io.hpp>
#include <gbsn/monodromy.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw gbsn::parse_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

gbsn::GraphOfGroups load_graph(const std::string& path) {
    return gbsn::parse_graph(read_file(path));
}

gbsn::GraphOfGroups load_valid_graph(const std::string& path) {
    gbsn::GraphOfGroups g = load_graph(path);
    gbsn::ValidationReport r = gbsn::validate(g);
    if (!r.ok()) {
        std::ostringstream os;
        os << "invalid graph:";
        for (const auto& i : r.issues) os << " [" << i.category << "] " << i.detail << ";";
        throw gbsn::precondition_error(os.str());
    }
    return g;
}

std::vector<gbsn::Int> parse_prime_list(const std::string& csv) {
    std::vector<gbsn::Int> out;
    std::istringstream is(csv);
    std::string part;
    while (std::getline(is, part, ',')) {
        if (part.empty()) throw gbsn::parse_error("empty entry in prime list");
        for (char c : part)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw gbsn::parse_error("bad prime '" + part + "'");
        out.emplace_back(part);
    }
    if (out.empty()) throw gbsn::parse_error("empty prime list");
    return out;
}

int cmd_validate(const std::string& path, bool json_out) {
    gbsn::GraphOfGroups g = load_graph(path);
    gbsn::ValidationReport r = gbsn::validate(g);
    if (json_out) {
        std::cout << gbsn::validation_json(r) << "\n";
    } else if (r.ok()) {
        std::cout << "ok\n";
    } else {
        for (const auto& i : r.issues)
            std::cout << i.category << ": " << i.detail << "\n";
    }
    return r.ok() ? 0 : 1;
}

int cmd_presentation(const std::string& path, bool json_out) {
    gbsn::Presentation p = gbsn::presentation(load_valid_graph(path));
    if (json_out) {
        std::cout << gbsn::presentation_json(p) << "\n";
        return 0;
    }
    std::cout << "generators:";
    for (const auto& g : p.generators) std::cout << ' ' << g;
    std::cout << "\nrelators:\n";
    for (const auto& r : p.relators) std::cout << "  " << r << "\n";
    return 0;
}

int cmd_monodromy(const std::string& path, unsigned long cap, bool json_out) {
    gbsn::MonodromyReport r = gbsn::monodromy_report(load_valid_graph(path), cap);
    if (json_out) {
        std::cout << gbsn::monodromy_json(r) << "\n";
        return 0;
    }
    std::cout << "generators (" << r.generators.size() << "):\n";
    for (const auto& g : r.generators)
        std::cout << "  " << g.edge_id << ": " << gbsn::to_string(g.matrix) << "\n";
    switch (r.classification.kind) {
        case gbsn::Classification::Kind::Trivial:
            std::cout << "classification: trivial\n";
            break;
        case gbsn::Classification::Kind::Finite:
            std::cout << "classification: finite of order " << r.classification.order.get_str() << "\n";
            break;
        case gbsn::Classification::Kind::Infinite:
            std::cout << "classification: infinite\n";
            break;
        case gbsn::Classification::Kind::Inconclusive:
            std::cout << "classification: inconclusive (cap " << r.classification.cap << ")\n";
            break;
    }
    return 0;
}

int cmd_properties(const std::string& path, unsigned long cap, bool json_out) {
    auto verdicts = gbsn::decide_all(load_valid_graph(path), cap);
    if (json_out) {
        std::cout << gbsn::verdicts_json(verdicts) << "\n";
        return 0;
    }
    for (const auto& v : verdicts) {
        std::cout << v.property << ": " << gbsn::to_string(v.answer) << " (" << v.reason << ")\n";
        if (v.witness)
            std::cout << "  witness lattice: " << gbsn::to_string(v.witness->basis()) << "\n";
    }
    return 0;
}

int cmd_normalize(const std::string& path, const std::vector<std::string>& word_tokens,
                  bool json_out) {
    gbsn::GraphOfGroups g = load_valid_graph(path);
    gbsn::AscendingHnn h = gbsn::as_ascending_hnn(g);
    std::ostringstream joined;
    for (std::size_t i = 0; i < word_tokens.size(); ++i) {
        if (i) joined << ' ';
        joined << word_tokens[i];
    }
    gbsn::Word w = gbsn::parse_word(joined.str(), h.rank());
    gbsn::NormalForm nf = gbsn::normalize(h, w);
    if (json_out)
        std::cout << gbsn::normal_form_json(nf, h.rank()) << "\n";
    else
        std::cout << gbsn::render_normal_form(nf, h.rank()) << "\n";
    return 0;
}

int cmd_quotient(const std::string& path, const std::string& prime, unsigned long level,
                 const std::vector<std::string>& words, const std::string& subgroup_path,
                 const std::string& budget, bool json_out) {
    gbsn::GraphOfGroups g = load_valid_graph(path);
    gbsn::AscendingHnn h = gbsn::as_ascending_hnn(g);
    gbsn::LevelQuotient lq = gbsn::build_level_quotient(h, gbsn::Int(prime), level);

    std::vector<gbsn::Word> gens;
    for (const auto& w : words) gens.push_back(gbsn::parse_word(w, h.rank()));
    if (!subgroup_path.empty())
        for (auto& w : gbsn::parse_word_list(read_file(subgroup_path), h.rank()))
            gens.push_back(std::move(w));

    std::optional<gbsn::QuotientImage> image;
    if (!gens.empty()) image = gbsn::subgroup_image(lq, gens, gbsn::Int(budget));

    if (json_out) {
        std::cout << gbsn::level_quotient_json(lq, image) << "\n";
        return 0;
    }
    std::cout << "level quotient at p=" << lq.p.get_str() << ", l=" << lq.level << "\n"
              << "modulus p^l = " << lq.modulus.get_str() << "\n"
              << "stable letter order r = " << lq.stable_order.get_str() << "\n"
              << "group order = " << lq.group_order.get_str() << "\n";
    if (image) {
        std::cout << "image order = " << image->image_order.get_str() << " (index "
                  << image->index.get_str() << ")\n"
                  << "generator images:";
        for (const auto& e : image->generator_images) std::cout << ' ' << gbsn::to_string(e);
        std::cout << "\n";
    }
    return 0;
}

int cmd_certificate(const std::string& path, const std::string& subgroup_path,
                    const std::string& primes, unsigned long max_level,
                    unsigned long word_budget, const std::string& enumeration_budget,
                    bool json_out) {
    gbsn::GraphOfGroups g = load_valid_graph(path);
    gbsn::AscendingHnn h = gbsn::as_ascending_hnn(g);
    std::vector<gbsn::Word> gens = gbsn::parse_word_list(read_file(subgroup_path), h.rank());
    if (gens.empty()) throw gbsn::precondition_error("subgroup file contains no words");

    gbsn::SearchBudget budget;
    if (!primes.empty()) budget.primes = parse_prime_list(primes);
    budget.max_level = max_level;
    budget.word_budget = word_budget;
    budget.enumeration_budget = gbsn::Int(enumeration_budget);

    gbsn::SearchResult r = gbsn::certificate_search(h, gens, budget);
    if (r.certificate && !gbsn::verify_certificate(h, gens, *r.certificate))
        throw gbsn::precondition_error("internal error: certificate failed replay");

    if (json_out) {
        std::cout << gbsn::search_result_json(r) << "\n";
        return 0;
    }
    if (r.certificate) {
        const gbsn::Certificate& c = *r.certificate;
        std::cout << "certificate found (verified by replay):\n" << "  " << c.reason << "\n"
                  << "  group order " << c.group_order.get_str() << ", image order "
                  << c.image_order.get_str() << ", index " << c.index.get_str() << "\n"
                  << "  generator images:";
        for (const auto& s : c.generator_images) std::cout << ' ' << s;
        std::cout << "\n";
    } else {
        std::cout << "no certificate found within budget (proves nothing)\n";
    }
    std::cout << "search log:\n";
    for (const auto& line : r.log) std::cout << "  " << line << "\n";
    return 0;
}

int cmd_examples(const std::string& name) {
    if (name.empty()) {
        for (const auto& n : gbsn::builtin_names()) std::cout << n << "\n";
        return 0;
    }
    std::cout << gbsn::render_graph(gbsn::builtin_example(name));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tools for groups splitting as finite graphs of Z^n lattices"};
    app.require_subcommand(1);

    int rc = 0;

    auto* validate_cmd = app.add_subcommand("validate", "check a graph file");
    std::string validate_path;
    bool validate_json = false;
    validate_cmd->add_option("file", validate_path, "graph file")->required();
    validate_cmd->add_flag("--json", validate_json, "emit JSON");
    validate_cmd->callback([&] { rc = cmd_validate(validate_path, validate_json); });

    auto* pres_cmd = app.add_subcommand("presentation", "print the group presentation");
    std::string pres_path;
    bool pres_json = false;
    pres_cmd->add_option("file", pres_path, "graph file")->required();
    pres_cmd->add_flag("--json", pres_json, "emit JSON");
    pres_cmd->callback([&] { rc = cmd_presentation(pres_path, pres_json); });

    auto* mono_cmd = app.add_subcommand("monodromy", "modular matrices and their classification");
    std::string mono_path;
    unsigned long mono_cap = 0;
    bool mono_json = false;
    mono_cmd->add_option("file", mono_path, "graph file")->required();
    mono_cmd->add_option("--cap", mono_cap, "closure cap (0 = default)");
    mono_cmd->add_flag("--json", mono_json, "emit JSON");
    mono_cmd->callback([&] { rc = cmd_monodromy(mono_path, mono_cap, mono_json); });

    auto* prop_cmd = app.add_subcommand("properties", "VRC, LERF, RF, and GR verdicts");
    std::string prop_path;
    unsigned long prop_cap = 0;
    bool prop_json = false;
    prop_cmd->add_option("file", prop_path, "graph file")->required();
    prop_cmd->add_option("--cap", prop_cap, "closure cap (0 = default)");
    prop_cmd->add_flag("--json", prop_json, "emit JSON");
    prop_cmd->callback([&] { rc = cmd_properties(prop_path, prop_cap, prop_json); });

    auto* norm_cmd = app.add_subcommand("normalize", "Britton normal form of a word");
    std::string norm_path;
    std::vector<std::string> norm_word;
    bool norm_json = false;
    norm_cmd->add_option("file", norm_path, "ascending HNN graph file")->required();
    norm_cmd->add_option("word", norm_word, "word tokens, e.g. t a t^-1")->required();
    norm_cmd->add_flag("--json", norm_json, "emit JSON");
    norm_cmd->callback([&] { rc = cmd_normalize(norm_path, norm_word, norm_json); });

    auto* quot_cmd = app.add_subcommand("quotient", "level quotient and subgroup image");
    std::string quot_path, quot_prime = "3", quot_subgroup, quot_budget = "1000000";
    unsigned long quot_level = 1;
    std::vector<std::string> quot_words;
    bool quot_json = false;
    quot_cmd->add_option("file", quot_path, "ascending HNN graph file")->required();
    quot_cmd->add_option("-p,--prime", quot_prime, "prime p")->required();
    quot_cmd->add_option("-l,--level", quot_level, "level l >= 1")->required();
    quot_cmd->add_option("word", quot_words, "subgroup generator words (quote each)");
    quot_cmd->add_option("--subgroup", quot_subgroup, "file with one word per line");
    quot_cmd->add_option("--enumeration-budget", quot_budget, "closure size bound");
    quot_cmd->add_flag("--json", quot_json, "emit JSON");
    quot_cmd->callback([&] {
        rc = cmd_quotient(quot_path, quot_prime, quot_level, quot_words, quot_subgroup,
                          quot_budget, quot_json);
    });

    auto* cert_cmd = app.add_subcommand("certificate", "search for a proper-image certificate");
    std::string cert_path, cert_subgroup, cert_primes, cert_budget = "1000000";
    unsigned long cert_max_level = 3, cert_word_budget = 6;
    bool cert_json = false;
    cert_cmd->add_option("file", cert_path, "ascending HNN graph file")->required();
    cert_cmd->add_option("subgroup", cert_subgroup, "file with one word per line")->required();
    cert_cmd->add_option("--primes", cert_primes, "comma-separated primes");
    cert_cmd->add_option("--max-level", cert_max_level, "highest level per prime");
    cert_cmd->add_option("--word-budget", cert_word_budget, "kernel enumeration word length");
    cert_cmd->add_option("--enumeration-budget", cert_budget, "closure size bound");
    cert_cmd->add_flag("--json", cert_json, "emit JSON");
    cert_cmd->callback([&] {
        rc = cmd_certificate(cert_path, cert_subgroup, cert_primes, cert_max_level,
                             cert_word_budget, cert_budget, cert_json);
    });

    auto* ex_cmd = app.add_subcommand("examples", "print a built-in graph file");
    std::string ex_name;
    ex_cmd->add_option("name", ex_name, "leary-minasyan or bs(n,PHI); empty lists names");
    ex_cmd->callback([&] { rc = cmd_examples(ex_name); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const gbsn::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gbsn::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
