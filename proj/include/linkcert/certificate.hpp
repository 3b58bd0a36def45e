#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "linkcert/diagram.hpp"
#include "linkcert/errors.hpp"
#include "linkcert/faces.hpp"
#include "linkcert/longitude.hpp"
#include "linkcert/pd.hpp"
#include "linkcert/presentation.hpp"
#include "linkcert/reduce.hpp"
#include "linkcert/solver.hpp"

namespace linkcert {

enum class Verdict { Nontrivial, Trivial, NotApplicable };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Nontrivial: return "nontrivial";
        case Verdict::Trivial: return "trivial";
        default: return "not_applicable";
    }
}

struct ComponentRecord {
    LongitudeRep rep;
    Word geodesic_word;
    std::optional<Word> normal_form_word;
};

struct FactorRecord {
    std::string pd;
    int crossings = 0;
    int circles = 0;
    int components = 0;
    bool connected = false, reduced = false, prime = false, alternating = false;
    bool has_presentation = false;
    int generators = 0, base_relators = 0, symmetrized = 0;
    int pieces_max_len = 0;
    bool c4 = false, t4 = false;
    std::vector<ComponentRecord> component_records;
};

struct Certificate {
    std::string input_digest;
    Verdict verdict = Verdict::Trivial;
    std::optional<std::pair<int, int>> evidence; // (factor index, component index)
    std::vector<FactorRecord> factors;
};

struct CertifyOptions {
    bool with_normal_form = false;
};

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

/// Runs the certification pipeline: reduce, split into factors, and for each
/// alternating factor with crossings verify the small-cancellation structure
/// and geodesically reduce every longitude. The verdict follows the theorem:
/// alternating factors with crossings must yield a nonempty geodesic
/// longitude; a violation is an internal inconsistency, not a verdict.
inline Certificate certify(const Diagram& d, const CertifyOptions& opts = {}) {
    Certificate cert;
    cert.input_digest = fnv1a_hex(to_pd_text(d));

    const Diagram reduced_d = reduce(d);
    const std::vector<Diagram> factors = split_factors(reduced_d);

    bool any_nonalternating = false;
    for (const Diagram& f : factors) {
        FactorRecord rec;
        rec.pd = to_pd_text(f);
        rec.crossings = f.crossing_count();
        rec.circles = f.circle_count();
        rec.components = f.component_count();
        rec.connected = f.is_connected();
        rec.reduced = is_reduced(f);
        rec.alternating = is_alternating(f);
        rec.prime =
            rec.crossings >= 1 && rec.connected && rec.reduced ? is_prime(f) : false;

        if (rec.crossings == 0) {
            cert.factors.push_back(std::move(rec));
            continue;
        }
        if (!rec.alternating) {
            any_nonalternating = true;
            cert.factors.push_back(std::move(rec));
            continue;
        }

        const FaceSet fs = trace_faces(f);
        const Colouring col = checkerboard(fs);
        const Presentation p = build_presentation(f, fs, col);
        rec.has_presentation = true;
        rec.generators = static_cast<int>(p.generators().size());
        rec.base_relators = static_cast<int>(p.base_relators().size());
        rec.symmetrized = static_cast<int>(p.symmetrized().size());
        rec.pieces_max_len = p.max_piece_length();
        rec.c4 = p.satisfies_c4();
        rec.t4 = p.satisfies_t4();
        if (!rec.c4 || !rec.t4)
            throw InternalInconsistency(
                "C(4)/T(4) failed on a reduced prime alternating factor: " + rec.pd);

        for (int k = 0; k < f.component_count(); ++k) {
            ComponentRecord cr;
            cr.rep = longitude(f, fs, col, k);
            cr.geodesic_word = geodesic_reduce(cr.rep.longitude_word, p);
            if (opts.with_normal_form) cr.normal_form_word = normal_form(cr.rep, p);
            rec.component_records.push_back(std::move(cr));
        }
        cert.factors.push_back(std::move(rec));
    }

    if (any_nonalternating) {
        cert.verdict = Verdict::NotApplicable;
        return cert;
    }
    for (std::size_t fi = 0; fi < cert.factors.size(); ++fi) {
        const FactorRecord& rec = cert.factors[fi];
        for (std::size_t ki = 0; ki < rec.component_records.size(); ++ki) {
            if (!rec.component_records[ki].geodesic_word.empty()) {
                cert.verdict = Verdict::Nontrivial;
                cert.evidence = {static_cast<int>(fi), static_cast<int>(ki)};
                return cert;
            }
        }
    }
    for (const FactorRecord& rec : cert.factors) {
        if (rec.crossings > 0)
            throw InternalInconsistency(
                "alternating factor with crossings has only trivial geodesic longitudes: " +
                rec.pd);
    }
    cert.verdict = Verdict::Trivial;
    return cert;
}

inline nlohmann::json certificate_json(const Certificate& cert) {
    nlohmann::json j;
    j["input_digest"] = cert.input_digest;
    j["verdict"] = verdict_name(cert.verdict);
    if (cert.evidence)
        j["evidence"] = {{"factor", cert.evidence->first}, {"component", cert.evidence->second}};
    else
        j["evidence"] = nullptr;
    j["factors"] = nlohmann::json::array();
    for (const FactorRecord& rec : cert.factors) {
        nlohmann::json f;
        f["pd"] = rec.pd;
        f["crossings"] = rec.crossings;
        f["circles"] = rec.circles;
        f["components"] = rec.components;
        f["checks"] = {{"connected", rec.connected},
                       {"reduced", rec.reduced},
                       {"prime", rec.prime},
                       {"alternating", rec.alternating}};
        if (rec.has_presentation) {
            f["presentation"] = {{"generators", rec.generators},
                                 {"base_relators", rec.base_relators},
                                 {"symmetrized", rec.symmetrized}};
            f["small_cancellation"] = {{"pieces_max_len", rec.pieces_max_len},
                                       {"C4", rec.c4},
                                       {"T4", rec.t4}};
        } else {
            f["presentation"] = nullptr;
            f["small_cancellation"] = nullptr;
        }
        f["components_detail"] = nlohmann::json::array();
        for (const ComponentRecord& cr : rec.component_records) {
            nlohmann::json c;
            c["component"] = cr.rep.component;
            c["slk"] = cr.rep.slk;
            c["double_word"] = word_to_text(cr.rep.double_word);
            c["double_length"] = cr.rep.double_length;
            c["meridian_word"] = word_to_text(cr.rep.meridian_word);
            c["longitude_word"] = word_to_text(cr.rep.longitude_word);
            c["geodesic_word"] = word_to_text(cr.geodesic_word);
            c["geodesic_length"] = cr.geodesic_word.size();
            c["nonempty"] = !cr.geodesic_word.empty();
            if (cr.normal_form_word) {
                c["normal_form_word"] = word_to_text(*cr.normal_form_word);
                c["normal_form_parity_changes"] = parity_changes(*cr.normal_form_word);
            } else {
                c["normal_form_word"] = nullptr;
                c["normal_form_parity_changes"] = nullptr;
            }
            f["components_detail"].push_back(std::move(c));
        }
        j["factors"].push_back(std::move(f));
    }
    return j;
}

inline std::string certificate_text(const Certificate& cert) {
    std::ostringstream os;
    os << "verdict: " << verdict_name(cert.verdict) << "\n";
    os << "input digest: " << cert.input_digest << "\n";
    for (std::size_t fi = 0; fi < cert.factors.size(); ++fi) {
        const FactorRecord& rec = cert.factors[fi];
        os << "factor " << fi << ": " << rec.pd << "\n";
        os << "  crossings=" << rec.crossings << " circles=" << rec.circles
           << " components=" << rec.components << "\n";
        os << "  connected=" << rec.connected << " reduced=" << rec.reduced
           << " prime=" << rec.prime << " alternating=" << rec.alternating << "\n";
        if (rec.has_presentation) {
            os << "  presentation: " << rec.generators << " generators, " << rec.base_relators
               << " relators, " << rec.symmetrized << " symmetrized\n";
            os << "  small cancellation: pieces_max_len=" << rec.pieces_max_len
               << " C4=" << rec.c4 << " T4=" << rec.t4 << "\n";
        }
        for (const ComponentRecord& cr : rec.component_records) {
            os << "  component " << cr.rep.component << ": slk=" << cr.rep.slk
               << " longitude=[" << word_to_text(cr.rep.longitude_word) << "] geodesic=["
               << word_to_text(cr.geodesic_word) << "]\n";
            if (cr.normal_form_word)
                os << "    normal form=[" << word_to_text(*cr.normal_form_word)
                   << "] parity_changes=" << parity_changes(*cr.normal_form_word) << "\n";
        }
    }
    if (cert.evidence)
        os << "evidence: factor " << cert.evidence->first << ", component "
           << cert.evidence->second << "\n";
    return os.str();
}

} // namespace linkcert
