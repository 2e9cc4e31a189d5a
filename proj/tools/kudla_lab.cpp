#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

#include <kudla/kudla.hpp>

#include "verify/suites.hpp"

namespace {

using namespace kudla;

enum Exit { ok = 0, failed = 1, bad_flags = 2, on_cycle = 3, truncation = 4, eval_failure = 5 };

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(cplx z) {
    if (z.imag() == 0) return fmt(z.real());
    return fmt(z.real()) + (std::signbit(z.imag()) ? "" : "+") + fmt(z.imag()) + "i";
}

// a+bi, a-bi, bi, a; no spaces
std::optional<cplx> parse_complex(const std::string& s) {
    static const std::string num = R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";
    static const std::regex full("^" + num + num + "i$"), imag_only("^" + num + "i$"), real_only("^" + num + "$");
    std::smatch m;
    if (std::regex_match(s, m, full)) {
        if (m[2].str().front() != '+' && m[2].str().front() != '-') return std::nullopt;
        return cplx(std::stod(m[1]), std::stod(m[2]));
    }
    if (std::regex_match(s, m, imag_only)) return cplx(0, std::stod(m[1]));
    if (std::regex_match(s, m, real_only)) return cplx(std::stod(m[1]), 0);
    return std::nullopt;
}

struct BadFlag : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cplx need_complex(const std::string& flag, const std::string& text) {
    if (text.empty()) throw BadFlag(flag + " is required");
    auto z = parse_complex(text);
    if (!z) throw BadFlag(flag + ": cannot parse '" + text + "' (expected a+bi)");
    return *z;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw BadFlag("cannot open " + path);
    f << text;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
    std::string what, z1, z2, tau, json;
    double v = 1.0, eps = 1e-10, rho_t0 = 2.0, rho_t1 = 3.0;
    double T = 0;
    long m = 1, cutoff = -1;
};

int run_eval(const EvalArgs& a) {
    nlohmann::ordered_json j;
    j["what"] = a.what;
    auto point = [&] { return PointH2(need_complex("--z1", a.z1), need_complex("--z2", a.z2)); };
    auto tau = [&] { return Tau(need_complex("--tau", a.tau)); };
    cplx value{};
    double tail = 0;
    std::optional<Form11> form;

    if (a.what == "green" || a.what == "green-mod" || a.what == "green-zero") {
        PointH2 z = point();
        j["inputs"] = {{"v", a.v}, {"z1", a.z1}, {"z2", a.z2}, {"m", a.m}, {"eps", a.eps}};
        TruncationReport r;
        if (a.what == "green") r = kudla_green(a.v, z, a.m, a.eps);
        else if (a.what == "green-zero") r = green_zero(a.v, z, a.eps);
        else r = green_modified(a.v, z, a.m, CutoffSpec{a.rho_t0, a.rho_t1}, a.eps);
        value = r.value;
        tail = r.tail_bound;
        j["terms_used"] = r.terms_used;
    } else if (a.what.rfind("theta:", 0) == 0) {
        ThetaKind k;
        try {
            k = parse_theta_kind(a.what.substr(6));
        } catch (const domain_error& e) {
            throw BadFlag(e.what());
        }
        std::optional<PointH2> z;
        if (needs_point(k)) z = point();
        long cutoff = a.cutoff < 0 ? 50 : a.cutoff;
        j["inputs"] = {{"tau", a.tau}, {"cutoff", cutoff}};
        if (z) {
            j["inputs"]["z1"] = a.z1;
            j["inputs"]["z2"] = a.z2;
        }
        auto r = theta_eval(k, tau(), z, cutoff);
        tail = r.tail_bound;
        if (r.is_form) form = r.form;
        else value = r.scalar;
    } else if (a.what == "e2") {
        long cutoff = a.cutoff < 0 ? 80 : a.cutoff;
        Tau t = tau();
        j["inputs"] = {{"tau", a.tau}, {"cutoff", cutoff}};
        value = eisenstein_e2(t, cutoff);
        tail = eisenstein_e2_tail(t, cutoff);
    } else if (a.what == "height") {
        j["inputs"] = {{"m", a.m}, {"v", a.v}};
        HeightValue h = height_closed(a.m, a.v);
        if (a.T > 0) {
            j["inputs"]["T"] = a.T;
            h = height_numeric(a.m, a.v, a.T, CutoffSpec{a.rho_t0, a.rho_t1}, a.eps);
        }
        j["method"] = std::string(to_string(h.method));
        value = h.value;
        tail = h.error_estimate;
    } else {
        throw BadFlag("--what: unknown quantity '" + a.what + "'");
    }

    if (form) {
        std::cout << "c11 " << fmt(form->c11) << "\nc22 " << fmt(form->c22) << "\nc12 " << fmt(form->c12) << "\nc21 "
                  << fmt(form->c21) << "\n";
        j["value"] = {{"c11", fmt(form->c11)}, {"c22", fmt(form->c22)}, {"c12", fmt(form->c12)}, {"c21", fmt(form->c21)}};
    } else {
        std::cout << "value " << fmt(value) << "\n";
        if (value.imag() == 0) j["value"] = value.real();
        else j["value"] = {value.real(), value.imag()};
    }
    std::cout << "tail_bound " << fmt(tail) << "\n";
    j["tail_bound"] = tail;
    if (!a.json.empty()) write_text(a.json, j.dump(2) + "\n");
    return ok;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite = "all", json, csv;
    std::optional<double> tol;
    std::uint64_t seed = 7;
    bool timing = false;
    int threads = 0;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string reports_csv(const std::vector<verify::Report>& rs, bool timing) {
    std::ostringstream o;
    o << "check_name,inputs,values,residual,tolerance,passed,runtime_ms\n";
    for (const auto& r : rs) {
        std::string in, vals;
        for (const auto& [k, v] : r.inputs) in += (in.empty() ? "" : ";") + k + "=" + v;
        for (double v : r.values) vals += (vals.empty() ? "" : ";") + fmt(v);
        o << csv_field(r.check_name) << ',' << csv_field(in) << ',' << csv_field(vals) << ',' << fmt(r.residual) << ','
          << fmt(r.tolerance) << ',' << (r.passed ? "true" : "false") << ',' << (timing ? r.runtime_ms : 0) << '\n';
    }
    return o.str();
}

int run_verify(const VerifyArgs& a) {
    if (!verify::is_suite(a.suite)) throw BadFlag("--suite: unknown suite '" + a.suite + "'");
    std::optional<ThreadCap> cap;
    if (a.threads > 0) cap.emplace(a.threads);
    auto reports = verify::run_suite(a.suite, a.seed);
    if (a.tol) {
        for (auto& r : reports) {
            r.tolerance = *a.tol;
            r.passed = r.residual <= r.tolerance;
        }
    }
    bool all = true;
    std::size_t width = 10;
    for (const auto& r : reports) width = std::max(width, r.check_name.size());
    std::printf("%-*s  %-12s %-12s %s\n", int(width), "check", "residual", "tolerance", "status");
    for (const auto& r : reports) {
        all = all && r.passed;
        std::printf("%-*s  %-12.4g %-12.4g %s\n", int(width), r.check_name.c_str(), r.residual, r.tolerance, r.passed ? "pass" : "FAIL");
    }
    std::size_t npass = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
    std::printf("%zu/%zu checks passed\n", npass, reports.size());
    if (!a.json.empty()) write_text(a.json, verify::to_json(reports, a.timing).dump(2) + "\n");
    if (!a.csv.empty()) write_text(a.csv, reports_csv(reports, a.timing));
    return all ? ok : failed;
}

// ---------------------------------------------------------------- series

struct SeriesArgs {
    std::string series;
    long n_max = 10;
    double v = 1.0;
};

int run_series(const SeriesArgs& a) {
    if (a.n_max < 0) throw BadFlag("--n-max must be >= 0");
    if (!(a.v > 0)) throw BadFlag("--v must be positive");
    std::ostringstream o;
    o << "n,value\n";
    if (a.series == "e2") {
        o << "0," << fmt(c0(a.v)) << '\n';
        for (long n = 1; n <= a.n_max; ++n) o << n << ',' << sigma1(n) << '\n';
    } else if (a.series == "h") {
        for (long n = 0; n <= a.n_max; ++n) o << n << ',' << hurwitz_h(n).str() << '\n';
    } else if (a.series == "h1") {
        for (long n = 0; n <= a.n_max; ++n) o << n << ',' << hurwitz_h1(n).str() << '\n';
    } else if (a.series == "funke") {
        // holomorphic coefficients of the difference of the two restricted series
        o << "0," << fmt(-1.0 / 12.0 + 1.0 / (4.0 * pi * a.v)) << '\n';
        for (long n = 1; n <= a.n_max; ++n) o << n << ',' << (hurwitz_h1(n) + Rational{min_divisor_sum(n)}).str() << '\n';
    } else if (a.series == "heights") {
        for (long n = 0; n <= a.n_max; ++n) o << n << ',' << fmt(height_closed(n, a.v).value) << '\n';
    } else {
        throw BadFlag("--series: unknown series '" + a.series + "'");
    }
    std::cout << o.str();
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green functions on the product of two modular curves: evaluation and verification"};
    app.require_subcommand(1);

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "evaluate a single quantity");
    eval->add_option("--what", ea.what, "green|green-mod|green-zero|theta:<kind>|e2|height")->required();
    eval->add_option("--v", ea.v, "imaginary part of tau");
    eval->add_option("--z1", ea.z1, "first coordinate, a+bi");
    eval->add_option("--z2", ea.z2, "second coordinate, a+bi");
    eval->add_option("--m", ea.m, "index of the special cycle");
    eval->add_option("--tau", ea.tau, "modular variable, a+bi");
    eval->add_option("--cutoff", ea.cutoff, "series cutoff");
    eval->add_option("--eps", ea.eps, "target truncation error");
    eval->add_option("--rho-t0", ea.rho_t0, "partition of unity start");
    eval->add_option("--rho-t1", ea.rho_t1, "partition of unity end");
    eval->add_option("--T", ea.T, "height: evaluate numerically at (i, iT)");
    eval->add_option("--json", ea.json, "write JSON to this path (- for stdout)");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "run verification suites");
    ver->add_option("--suite", va.suite, "special|lattice|fourier|boundary|ddc|theta|poisson|hurwitz|heights|all");
    ver->add_option("--tol", va.tol, "override every tolerance");
    ver->add_option("--seed", va.seed, "seed for randomized points");
    ver->add_option("--json", va.json, "write the report array as JSON");
    ver->add_option("--csv", va.csv, "write the report table as CSV");
    ver->add_flag("--timing", va.timing, "record runtimes in the reports");
    ver->add_option("--threads", va.threads, "worker threads")->check(CLI::PositiveNumber);

    SeriesArgs sa;
    auto* ser = app.add_subcommand("series", "print coefficient tables as CSV");
    ser->add_option("--series", sa.series, "e2|h|h1|funke|heights")->required();
    ser->add_option("--n-max", sa.n_max, "largest index");
    ser->add_option("--v", sa.v, "imaginary part of tau");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bad_flags;
    }

    try {
        if (*eval) return run_eval(ea);
        if (*ver) return run_verify(va);
        return run_series(sa);
    } catch (const BadFlag& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_flags;
    } catch (const kudla::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_flags;
    } catch (const kudla::on_cycle_error& e) {
        std::cerr << "error: " << e.what() << " (M = " << e.matrix.str() << ")\n";
        return on_cycle;
    } catch (const kudla::truncation_error& e) {
        std::cerr << "error: " << e.what() << " (best bound " << e.best_bound << ")\n";
        return truncation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return eval_failure;
    }
}
