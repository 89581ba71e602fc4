#include "nqp/instance_io.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nqp/errors.hpp"
#include "nqp/validate.hpp"

namespace nqp {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> lines;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto eol = text.find('\n');
        std::string_view raw = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            if (j > i) line.tokens.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

template <class T>
T parse_number(std::string_view token, std::size_t line)
{
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc::result_out_of_range) throw ParseError(line, "number out of range: '" + std::string(token) + "'");
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, "expected " + std::string(std::is_same_v<T, double> ? "a real" : "an integer") +
                                   ", got '" + std::string(token) + "'");
    if constexpr (std::is_same_v<T, double>)
        if (!std::isfinite(value)) throw ParseError(line, "non-finite coefficient");
    return value;
}

class Cursor {
public:
    explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

    const Line& next(const char* expecting)
    {
        if (pos_ >= lines_.size())
            throw ParseError(lines_.empty() ? 1 : lines_.back().number + 1,
                             std::string("unexpected end of input, expected ") + expecting);
        return lines_[pos_++];
    }

    const Line& keyword(std::string_view key, std::size_t arity)
    {
        const Line& line = next(std::string(key).c_str());
        if (line.tokens.front() != key)
            throw ParseError(line.number, "expected '" + std::string(key) + "', got '" + std::string(line.tokens.front()) + "'");
        if (line.tokens.size() != arity + 1)
            throw ParseError(line.number, "'" + std::string(key) + "' takes " + std::to_string(arity) + " argument(s)");
        return line;
    }

    bool done() const { return pos_ >= lines_.size(); }
    const Line& peek() const { return lines_[pos_]; }

private:
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
};

template <class T>
Instance<T> parse_body(Cursor& cur, std::size_t n, LevelSet levels, bool psd)
{
    const std::size_t q_line = cur.keyword("Q", 0).number;
    std::vector<T> q;
    q.reserve(n * n);
    for (std::size_t row = 0; row < n; ++row) {
        const Line& line = cur.next("a row of Q");
        if (line.tokens.front() == "C")
            throw ParseError(line.number, "dimension mismatch: Q has " + std::to_string(row) + " rows, expected N = " +
                                              std::to_string(n));
        if (line.tokens.size() != n)
            throw ParseError(line.number, "dimension mismatch: Q row has " + std::to_string(line.tokens.size()) +
                                              " entries, expected N = " + std::to_string(n));
        for (auto tok : line.tokens) q.push_back(parse_number<T>(tok, line.number));
    }
    const Line& c_header = cur.next("'C'");
    if (c_header.tokens.front() != "C")
        throw ParseError(c_header.number, "dimension mismatch: Q has more than N = " + std::to_string(n) + " rows");
    if (c_header.tokens.size() != 1) throw ParseError(c_header.number, "'C' takes no arguments");
    const Line& c_line = cur.next("the row of C");
    if (c_line.tokens.size() != n)
        throw ParseError(c_line.number, "dimension mismatch: C has " + std::to_string(c_line.tokens.size()) +
                                            " entries, expected N = " + std::to_string(n));
    std::vector<T> c;
    for (auto tok : c_line.tokens) c.push_back(parse_number<T>(tok, c_line.number));
    if (!cur.done()) throw ParseError(cur.peek().number, "unexpected content after C");

    auto inst = make_instance(n, std::move(q), std::move(c), std::move(levels), psd);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (inst.q_at(i, j) != inst.q_at(j, i))
                throw ParseError(q_line + 1 + i, "Q is not symmetric at (" + std::to_string(i) + "," +
                                                     std::to_string(j) + ")");
    return inst;
}

template <class T>
void write_row(std::ostringstream& out, std::span<const T> row)
{
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out << ' ';
        if constexpr (std::is_same_v<T, double>)
            out << format_real(row[j]);
        else
            out << row[j];
    }
    out << '\n';
}

}  // namespace

std::string format_real(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

AnyInstance parse_instance(std::string_view text)
{
    Cursor cur(tokenize(text));

    const Line& magic = cur.keyword("NQP", 1);
    if (magic.tokens[1] != "1") throw ParseError(magic.number, "unsupported format version '" + std::string(magic.tokens[1]) + "'");

    const Line& dom = cur.keyword("DOMAIN", 1);
    Domain domain;
    if (dom.tokens[1] == "int")
        domain = Domain::exact_integer;
    else if (dom.tokens[1] == "real")
        domain = Domain::real;
    else
        throw ParseError(dom.number, "DOMAIN must be 'int' or 'real'");

    const Line& psd_line = cur.keyword("PSD", 1);
    bool psd;
    if (psd_line.tokens[1] == "declared")
        psd = true;
    else if (psd_line.tokens[1] == "unknown")
        psd = false;
    else
        throw ParseError(psd_line.number, "PSD must be 'declared' or 'unknown'");

    const Line& n_line = cur.keyword("N", 1);
    const auto n_signed = parse_number<Int>(n_line.tokens[1], n_line.number);
    if (n_signed < 1) throw ParseError(n_line.number, "N must be positive");
    const auto n = static_cast<std::size_t>(n_signed);

    const Line& s_line = cur.next("'S'");
    if (s_line.tokens.front() != "S") throw ParseError(s_line.number, "expected 'S'");
    if (s_line.tokens.size() < 3 || s_line.tokens[2] != ":")
        throw ParseError(s_line.number, "S line must read 'S <count> : <values...>'");
    const auto count = parse_number<Int>(s_line.tokens[1], s_line.number);
    std::vector<Int> values;
    for (std::size_t k = 3; k < s_line.tokens.size(); ++k) values.push_back(parse_number<Int>(s_line.tokens[k], s_line.number));
    if (count < 0 || static_cast<std::size_t>(count) != values.size())
        throw ParseError(s_line.number, "dimension mismatch: S declares " + std::to_string(count) + " levels but lists " +
                                            std::to_string(values.size()));
    if (auto problems = LevelSet::check(values); !problems.empty())
        throw ParseError(s_line.number, "level set " + problems.front());
    LevelSet levels(std::move(values));

    if (domain == Domain::exact_integer) return parse_body<Int>(cur, n, std::move(levels), psd);
    return parse_body<double>(cur, n, std::move(levels), psd);
}

std::string certificate_block(const ReductionCertificate& cert)
{
    std::ostringstream out;
    out << "s1 " << cert.s1 << '\n';
    out << "s2 " << cert.s2 << '\n';
    out << "d " << cert.d << '\n';
    out << "scale " << to_string(cert.scale) << '\n';
    out << "levels " << cert.level_count << '\n';
    out << "D " << to_string(cert.two_value_offset) << '\n';
    out << "offset " << to_string(cert.objective_offset) << '\n';
    if (cert.penalty) {
        const auto& p = *cert.penalty;
        out << "Lambda " << to_string(p.lambda) << '\n';
        out << "s_star " << p.s_star << '\n';
        out << "s_star_star " << p.s_star_all << '\n';
        out << "K " << to_string(p.k) << '\n';
        out << "K' " << to_string(p.k_prime) << '\n';
        out << "L_G " << to_string(p.l_g) << '\n';
        out << "L_H " << to_string(p.l_h) << '\n';
        out << "M " << to_string(p.m) << '\n';
    } else {
        out << "M 0\n";
    }
    return out.str();
}

template <class T>
std::string serialize_instance(const Instance<T>& inst, const std::optional<ReductionCertificate>& certificate)
{
    std::ostringstream out;
    out << "NQP 1\n";
    out << "DOMAIN " << to_string(inst.domain) << '\n';
    out << "PSD " << (inst.psd_declared ? "declared" : "unknown") << '\n';
    out << "N " << inst.n << '\n';
    out << "S " << inst.levels.size() << " :";
    for (Int v : inst.levels.values()) out << ' ' << v;
    out << '\n';
    out << "Q\n";
    for (std::size_t i = 0; i < inst.n; ++i) write_row<T>(out, inst.q_row(i));
    out << "C\n";
    write_row<T>(out, inst.c);
    if (certificate) {
        out << "# reduction certificate\n";
        std::istringstream block(certificate_block(*certificate));
        for (std::string line; std::getline(block, line);) out << "# " << line << '\n';
    }
    return out.str();
}

std::string serialize_instance(const AnyInstance& inst, const std::optional<ReductionCertificate>& certificate)
{
    return std::visit([&](const auto& i) { return serialize_instance(i, certificate); }, inst);
}

AnyInstance read_instance_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInstance("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("write to '" + path + "' failed");
}

template std::string serialize_instance(const IntInstance&, const std::optional<ReductionCertificate>&);
template std::string serialize_instance(const RealInstance&, const std::optional<ReductionCertificate>&);

}  // namespace nqp
