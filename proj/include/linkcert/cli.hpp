#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linkcert/certificate.hpp"
#include "linkcert/diagram.hpp"
#include "linkcert/errors.hpp"
#include "linkcert/faces.hpp"
#include "linkcert/pd.hpp"
#include "linkcert/presentation.hpp"
#include "linkcert/reduce.hpp"
#include "linkcert/solver.hpp"

namespace linkcert {

namespace cli {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline int cmd_check(const std::string& file, std::ostream& out) {
    const Diagram d = parse_diagram(read_file(file));
    const bool connected = d.is_connected();
    const bool reduced = is_reduced(d);
    const bool prime =
        connected && reduced && d.crossing_count() >= 1 ? is_prime(d) : false;
    const bool alternating = is_alternating(d);
    out << "connected=" << connected << " reduced=" << reduced << " prime=" << prime
        << " alternating=" << alternating << "\n";
    return 0;
}

inline int cmd_present(const std::string& file, std::ostream& out) {
    const Diagram d = parse_diagram(read_file(file));
    const FaceSet fs = trace_faces(d);
    const Colouring col = checkerboard(fs);
    const Presentation p = build_presentation(d, fs, col);
    out << presentation_dump(p);
    return 0;
}

inline int cmd_reduce_word(const std::string& file, const std::string& word_text,
                           std::ostream& out) {
    const Diagram d = parse_diagram(read_file(file));
    const FaceSet fs = trace_faces(d);
    const Colouring col = checkerboard(fs);
    const Presentation p = build_presentation(d, fs, col);
    const Word w = parse_word_text(word_text, p);
    out << word_to_text(geodesic_reduce(w, p)) << "\n";
    return 0;
}

inline int cmd_certify(const std::string& file, bool json, bool with_normal_form,
                       std::ostream& out) {
    const Diagram d = parse_diagram(read_file(file));
    const Certificate cert = certify(d, CertifyOptions{with_normal_form});
    if (json)
        out << certificate_json(cert).dump(2) << "\n";
    else
        out << certificate_text(cert);
    return cert.verdict == Verdict::NotApplicable ? 3 : 0;
}

/// Entry point shared by main() and the tests. Exit codes: 0 success, 2 parse
/// or usage error, 3 not-applicable verdict, 4 internal inconsistency.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"certify non-triviality of alternating links from their diagrams"};
    app.require_subcommand(1);

    std::string file, word_text;
    bool json = false, with_normal_form = false;

    CLI::App* check = app.add_subcommand("check", "diagram predicate flags");
    check->add_option("file", file, "PD or JSON diagram file")->required();

    CLI::App* present = app.add_subcommand("present", "dump the augmented Dehn presentation");
    present->add_option("file", file, "PD or JSON diagram file")->required();

    CLI::App* rw = app.add_subcommand("reduce-word", "geodesically reduce a word");
    rw->add_option("file", file, "PD or JSON diagram file")->required();
    rw->add_option("word", word_text, "word as signed face ids, e.g. \"3 -1 5 -2\"")->required();

    CLI::App* cert = app.add_subcommand("certify", "run the certification pipeline");
    cert->add_option("file", file, "PD or JSON diagram file")->required();
    cert->add_flag("--json", json, "emit the certificate as JSON");
    cert->add_flag("--normal-form", with_normal_form, "attach normal-form words");

    // CLI11 expects argv order reversed.
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (check->parsed()) return cmd_check(file, out);
        if (present->parsed()) return cmd_present(file, out);
        if (rw->parsed()) return cmd_reduce_word(file, word_text, out);
        return cmd_certify(file, json, with_normal_form, out);
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cli

} // namespace linkcert
