// singres: invariants of isolated hypersurface singularities from
// log-resolution data. Subcommands: validate, invariants, from-poly,
// separate, e1, homalg.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "singres/homalg.hpp"
#include "singres/invariants.hpp"
#include "singres/model.hpp"
#include "singres/newton.hpp"
#include "singres/separating.hpp"
#include "singres/spectral.hpp"

namespace {

using nlohmann::json;
using namespace singres;

// exit codes: 0 success, 1 domain failure, 2 usage or I/O failure
constexpr int kDomainFailure = 1;
constexpr int kUsageFailure = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
    out << content;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::parse_error:
        case ErrorCode::io_error:
        case ErrorCode::invalid_argument:
            return kUsageFailure;
        default:
            return kDomainFailure;
    }
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void print(std::ostream& out) const {
        std::vector<size_t> widths(header.size());
        for (size_t c = 0; c < header.size(); ++c)
            widths[c] = header[c].size();
        for (const auto& row : rows)
            for (size_t c = 0; c < row.size(); ++c)
                widths[c] = std::max(widths[c], row[c].size());
        auto line = [&](const std::vector<std::string>& cells) {
            for (size_t c = 0; c < cells.size(); ++c) {
                if (c)
                    out << "  ";
                out << cells[c];
                for (size_t pad = cells[c].size(); pad < widths[c]; ++pad)
                    out << ' ';
            }
            out << "\n";
        };
        line(header);
        for (const auto& row : rows)
            line(row);
    }
};

std::string join(const std::set<DivisorId>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty())
            out += ",";
        out += id;
    }
    return out;
}

// --- subcommands --------------------------------------------------------------

int cmd_validate(const std::string& path, bool allow_any_discrepancy) {
    std::string text = read_file(path);
    try {
        parse_resolution(text, {allow_any_discrepancy});
    } catch (const ValidationError& e) {
        for (const auto& violation : e.report())
            std::cerr << violation.code << ": " << violation.message << "\n";
        return kDomainFailure;
    }
    std::cout << "ok\n";
    return 0;
}

int cmd_invariants(const std::string& path, long long m_max, const std::string& format,
                   bool allow_any_discrepancy) {
    ResolutionData data = parse_resolution(read_file(path), {allow_any_discrepancy});
    if (m_max == 0) {
        for (const auto& d : data.divisors)
            if (!d.is_star)
                m_max = std::max(m_max, d.ord);
    }
    if (m_max < 1)
        throw Error(ErrorCode::invalid_argument, "--m-max must be >= 1");

    bool any_separated = false;
    bool any_missing = false;
    std::vector<DivisorId> missing_ids;

    struct Row {
        long long m;
        std::set<DivisorId> sm;
        std::optional<long long> lambda;
        ExtendedNat md_value;
        std::optional<ExtendedNat> mu_value; // nullopt: requires-separating
        std::optional<std::optional<long long>> nu_value;
    };
    std::vector<Row> rows;
    for (long long m = 1; m <= m_max; ++m) {
        Row row;
        row.m = m;
        row.sm = s_m(data, m);
        try {
            row.lambda = lefschetz(data, m);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::missing_data)
                throw;
            any_missing = true;
        }
        row.md_value = md(data, m).value;
        if (is_separating(data, m)) {
            row.mu_value = mu(data, m);
            row.nu_value = nu(data, m);
        } else if (data.n == 1) {
            auto [separated, trace] = separate(data, m);
            (void)trace;
            any_separated = true;
            row.mu_value = mu(separated, m);
            row.nu_value = nu(separated, m);
        }
        rows.push_back(std::move(row));
    }

    if (any_missing)
        for (const auto& d : data.divisors)
            if (!d.is_star && !d.euler_open)
                missing_ids.push_back(d.id);

    auto mu_string = [](const Row& row) {
        return row.mu_value ? row.mu_value->str() : std::string("requires-separating");
    };
    auto nu_string = [](const Row& row) {
        if (!row.nu_value)
            return std::string("requires-separating");
        return *row.nu_value ? std::to_string(**row.nu_value) : std::string("HF=0");
    };

    if (format == "json") {
        json doc;
        doc["multiplicity"] = multiplicity(data);
        doc["lct"] = rational_to_string(lct(data));
        doc["m_max"] = m_max;
        doc["separated_internally"] = any_separated;
        doc["rows"] = json::array();
        for (const auto& row : rows) {
            json rj;
            rj["m"] = row.m;
            rj["s_m"] = row.sm;
            if (row.lambda)
                rj["lefschetz"] = *row.lambda;
            else
                rj["lefschetz"] = nullptr;
            rj["md"] = row.md_value.is_finite() ? json(row.md_value.value()) : json("inf");
            if (row.mu_value)
                rj["mu"] = row.mu_value->is_finite() ? json(row.mu_value->value()) : json("inf");
            else
                rj["mu"] = "requires-separating";
            if (!row.nu_value)
                rj["nu"] = "requires-separating";
            else if (*row.nu_value)
                rj["nu"] = **row.nu_value;
            else
                rj["nu"] = "HF=0";
            doc["rows"].push_back(std::move(rj));
        }
        if (!missing_ids.empty())
            doc["missing_euler_open"] = missing_ids;
        std::cout << doc.dump(2) << "\n";
        return 0;
    }

    std::cout << "file: " << path << "\n";
    std::cout << "multiplicity: " << multiplicity(data) << "\n";
    std::cout << "lct: " << rational_to_string(lct(data)) << "\n";
    if (any_separated)
        std::cout << "note: mu/nu computed on an internally separated resolution per m\n";
    Table table;
    table.header = {"m", "S_m", "lambda", "md", "mu", "nu"};
    for (const auto& row : rows)
        table.rows.push_back({std::to_string(row.m), join(row.sm),
                              row.lambda ? std::to_string(*row.lambda) : "-",
                              row.md_value.str(), mu_string(row), nu_string(row)});
    table.print(std::cout);
    if (any_missing) {
        std::cout << "note: lambda unavailable, euler_open missing on:";
        for (const auto& id : missing_ids)
            std::cout << " " << id;
        std::cout << "\n";
    }
    return 0;
}

int cmd_from_poly(const std::string& poly_text, const std::string& out_path) {
    LatticePolynomial poly = parse_poly(poly_text);
    ResolutionData data = resolution_from_curve(poly);
    std::string serialized = serialize_resolution(data);

    std::ostringstream summary;
    long long exceptional = 0;
    std::vector<long long> ords;
    for (const auto& d : data.divisors)
        if (!d.is_star) {
            ++exceptional;
            ords.push_back(d.ord);
        }
    std::sort(ords.begin(), ords.end());
    summary << "divisors: " << exceptional << " exceptional + star; ords:";
    for (long long o : ords)
        summary << " " << o;
    summary << "\n";

    if (out_path.empty()) {
        std::cout << serialized;
        std::cerr << summary.str();
    } else {
        write_file(out_path, serialized);
        std::cout << summary.str();
    }
    return 0;
}

int cmd_separate(const std::string& path, long long m, const std::string& out_path,
                 bool with_trace, bool allow_any_discrepancy) {
    if (m < 1)
        throw Error(ErrorCode::invalid_argument, "-m must be >= 1");
    ResolutionData data = parse_resolution(read_file(path), {allow_any_discrepancy});
    auto [separated, trace] = separate(data, m);
    std::string serialized = serialize_resolution(separated);
    if (out_path.empty()) {
        std::cout << serialized;
        if (with_trace)
            std::cerr << trace_to_json(trace);
    } else {
        write_file(out_path, serialized);
        if (with_trace)
            std::cout << trace_to_json(trace);
        else
            std::cout << "wrote " << out_path << " (" << trace.steps.size() << " blowup steps)\n";
    }
    return 0;
}

std::map<DivisorId, long long> parse_weights(const std::string& spec) {
    std::map<DivisorId, long long> weights;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::invalid_argument, "--weights expects id=int[,id=int...]");
        DivisorId id = item.substr(0, eq);
        long long w;
        try {
            w = std::stoll(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::invalid_argument, "--weights: '" + item + "' is not id=int");
        }
        weights[id] = w;
    }
    return weights;
}

int cmd_e1(const std::string& path, long long m, const std::string& weight_spec,
           const std::string& format, bool allow_any_discrepancy) {
    if (m < 1)
        throw Error(ErrorCode::invalid_argument, "-m must be >= 1");
    ResolutionData data = parse_resolution(read_file(path), {allow_any_discrepancy});

    if (!is_separating(data, m)) {
        std::cerr << "resolution is not multiplicity-" << m
                  << " separating; run `singres separate " << path << " -m " << m << "` first\n";
        return kDomainFailure;
    }

    // curve data can be enriched on the fly; anything else needs cover fields
    bool enriched = false;
    std::set<DivisorId> sm = s_m(data, m);
    bool cover_missing = false;
    for (const auto& id : sm)
        if (!data.at(id).cover)
            cover_missing = true;
    if (cover_missing && data.n == 1) {
        bool euler_complete = true;
        for (const auto& d : data.divisors)
            if (!d.is_star && !d.euler_open)
                euler_complete = false;
        if (euler_complete) {
            data = curve_cover_data(data);
            enriched = true;
        }
    }

    std::map<DivisorId, long long> weights = parse_weights(weight_spec);
    E1Page page;
    try {
        page = e1_page(data, m, weight_spec.empty() ? nullptr : &weights);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::missing_data) {
            std::cerr << e.what()
                      << "; regenerate the file with `singres from-poly` or supply cover data\n";
            return kDomainFailure;
        }
        throw;
    }
    DegenerationReport report = degeneration_check(page);
    auto [euler_sum, euler_ok] = e1_euler_check(page, data);

    auto conclusion_string = [&]() {
        switch (report.conclusion) {
            case DegenerationReport::Conclusion::nonzero_at_top:
                return "nonzero-at-top";
            case DegenerationReport::Conclusion::vanishes:
                return "HF vanishes";
            default:
                return "inconclusive";
        }
    };

    if (format == "json") {
        json doc;
        doc["m"] = page.m;
        doc["n"] = page.n;
        doc["default_weights_used"] = page.default_weights_used;
        doc["cover_data_derived"] = enriched;
        doc["entries"] = json::array();
        for (const auto& entry : page.entries)
            doc["entries"].push_back({{"p", entry.p},
                                      {"q", entry.q},
                                      {"divisor", entry.divisor},
                                      {"degree", entry.homology_degree},
                                      {"rank", entry.rank}});
        json degeneration;
        degeneration["top_total_degree"] =
            report.top_total_degree ? json(*report.top_total_degree) : json(nullptr);
        degeneration["column_tops"] = json::object();
        for (const auto& [column, top] : report.column_tops)
            degeneration["column_tops"][std::to_string(column)] = top;
        degeneration["hypothesis_holds"] = report.hypothesis_holds;
        degeneration["conclusion"] = conclusion_string();
        doc["degeneration"] = std::move(degeneration);
        doc["euler"] = {{"page", euler_sum},
                        {"hf", hf_euler(data, m)},
                        {"match", euler_ok}};
        std::cout << doc.dump(2) << "\n";
        return 0;
    }

    std::cout << "E1 page: m=" << m << ", n=" << data.n;
    if (page.default_weights_used)
        std::cout << " (default weights 1)";
    if (enriched)
        std::cout << " (cover data derived from adjacency)";
    std::cout << "\n";
    if (page.entries.empty()) {
        std::cout << "empty page (S_m is empty); HF vanishes\n";
    } else {
        Table table;
        table.header = {"p", "q", "divisor", "degree", "rank"};
        for (const auto& entry : page.entries)
            table.rows.push_back({std::to_string(entry.p), std::to_string(entry.q), entry.divisor,
                                  std::to_string(entry.homology_degree),
                                  std::to_string(entry.rank)});
        table.print(std::cout);
        std::cout << "top total degree: " << *report.top_total_degree << " ("
                  << conclusion_string() << ")\n";
    }
    std::cout << "euler: sum (-1)^(p+q) rank = " << euler_sum << "; (-1)^" << data.n
              << " * Lambda(" << m << ") = " << hf_euler(data, m) << " ["
              << (euler_ok ? "ok" : "MISMATCH") << "]\n";
    return 0;
}

int cmd_homalg(const std::string& path, long long pages, const std::string& format) {
    FilteredComplex filtered = filtered_complex_from_json_text(read_file(path));
    HomologySummary summary = homology(filtered.complex);

    if (format == "json") {
        json doc;
        doc["homology"] = json::object();
        for (const auto& [degree, h] : summary) {
            json hj;
            hj["rank"] = h.rank;
            hj["torsion"] = json::array();
            for (const Int& torsion : h.torsion)
                hj["torsion"].push_back(torsion.str());
            doc["homology"][std::to_string(degree)] = std::move(hj);
        }
        if (pages >= 0 && has_filtration(filtered)) {
            doc["pages"] = json::array();
            for (const auto& page : filtration_pages(filtered, pages)) {
                json pj = json::array();
                for (const auto& entry : page) {
                    json ej;
                    ej["p"] = entry.p;
                    ej["q"] = entry.q;
                    ej["rank"] = entry.rank;
                    if (!entry.torsion.empty()) {
                        ej["torsion"] = json::array();
                        for (const Int& torsion : entry.torsion)
                            ej["torsion"].push_back(torsion.str());
                    }
                    pj.push_back(std::move(ej));
                }
                doc["pages"].push_back(std::move(pj));
            }
        }
        std::cout << doc.dump(2) << "\n";
        return 0;
    }

    std::cout << homology_to_string(summary, filtered.complex.convention);
    if (pages >= 0) {
        if (!has_filtration(filtered))
            throw Error(ErrorCode::invalid_filtration, "--pages needs a filtration in the file");
        auto all = filtration_pages(filtered, pages);
        for (size_t r = 0; r < all.size(); ++r) {
            std::cout << "E_" << r << ":";
            if (all[r].empty())
                std::cout << " 0";
            for (const auto& entry : all[r]) {
                std::cout << "  (" << entry.p << "," << entry.q << "): rank " << entry.rank;
                for (const Int& torsion : entry.torsion)
                    std::cout << " +Z/" << torsion.str();
            }
            std::cout << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"combinatorial invariants of isolated hypersurface singularities"};
    app.require_subcommand(1);

    std::string path, out_path, poly_text, weight_spec;
    std::string format = "table";
    long long m = 0, m_max = 0, pages = -1;
    bool with_trace = false, allow_any_discrepancy = false;

    auto* validate_cmd = app.add_subcommand("validate", "check a resolution file");
    validate_cmd->add_option("file", path)->required();
    validate_cmd->add_flag("--allow-any-discrepancy", allow_any_discrepancy);

    auto* invariants_cmd = app.add_subcommand("invariants", "multiplicity, lct and the per-m table");
    invariants_cmd->add_option("file", path)->required();
    invariants_cmd->add_option("--m-max", m_max);
    invariants_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    invariants_cmd->add_flag("--allow-any-discrepancy", allow_any_discrepancy);

    auto* from_poly_cmd = app.add_subcommand("from-poly", "resolution data of a plane curve");
    from_poly_cmd->add_option("polynomial", poly_text)->required();
    from_poly_cmd->add_option("-o,--output", out_path);

    auto* separate_cmd = app.add_subcommand("separate", "blow up until multiplicity-m separating");
    separate_cmd->add_option("file", path)->required();
    separate_cmd->add_option("-m", m)->required();
    separate_cmd->add_option("-o,--output", out_path);
    separate_cmd->add_flag("--trace", with_trace);
    separate_cmd->add_flag("--allow-any-discrepancy", allow_any_discrepancy);

    auto* e1_cmd = app.add_subcommand("e1", "E1 page, degeneration report and Euler check");
    e1_cmd->add_option("file", path)->required();
    e1_cmd->add_option("-m", m)->required();
    e1_cmd->add_option("--weights", weight_spec);
    e1_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    e1_cmd->add_flag("--allow-any-discrepancy", allow_any_discrepancy);

    auto* homalg_cmd = app.add_subcommand("homalg", "homology and filtration pages of a complex");
    homalg_cmd->add_option("file", path)->required();
    homalg_cmd->add_option("--pages", pages);
    homalg_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageFailure;
    }

    try {
        if (validate_cmd->parsed())
            return cmd_validate(path, allow_any_discrepancy);
        if (invariants_cmd->parsed())
            return cmd_invariants(path, m_max, format, allow_any_discrepancy);
        if (from_poly_cmd->parsed())
            return cmd_from_poly(poly_text, out_path);
        if (separate_cmd->parsed())
            return cmd_separate(path, m, out_path, with_trace, allow_any_discrepancy);
        if (e1_cmd->parsed())
            return cmd_e1(path, m, weight_spec, format, allow_any_discrepancy);
        if (homalg_cmd->parsed())
            return cmd_homalg(path, pages, format);
    } catch (const ValidationError& e) {
        for (const auto& violation : e.report())
            std::cerr << violation.code << ": " << violation.message << "\n";
        return kDomainFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kUsageFailure;
}
