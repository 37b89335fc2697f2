#include "numgram/teacher.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace numgram {

namespace {

const std::array<const char*, 10> kUnits = {"",     "one", "two",   "three", "four",
                                            "five", "six", "seven", "eight", "nine"};
const std::array<const char*, 10> kTeens = {"ten",     "eleven",  "twelve",  "thirteen",
                                            "fourteen", "fifteen", "sixteen", "seventeen",
                                            "eighteen", "nineteen"};
const std::array<const char*, 10> kDecadesPaper = {"", "",        "twenty",  "thirty",
                                                   "fourty", "fifty", "sixty", "seventy",
                                                   "eighty", "ninety"};
const std::array<const char*, 10> kDecadesStandard = {"", "",        "twenty",  "thirty",
                                                      "forty", "fifty", "sixty", "seventy",
                                                      "eighty", "ninety"};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

TeacherConfig TeacherConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    TeacherConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad config line (expected key=value): " + line);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key == "max_number") {
            cfg.max_number = std::stoi(value);
        } else if (key == "orthography") {
            if (value == "paper")
                cfg.orthography = Orthography::Paper;
            else if (value == "standard")
                cfg.orthography = Orthography::Standard;
            else
                throw std::runtime_error("bad orthography value: " + value);
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
    if (cfg.max_number < 1) throw std::runtime_error("max_number must be >= 1");
    return cfg;
}

Term term_for(int n) {
    if (n < 1 || n > 9999) throw std::out_of_range("term_for: n must be in 1..9999");
    if (n <= 9) return Term::number(n);
    if (n == 10) return Term::base_power(1);
    if (n <= 19) return Term::add(Term::mul(Term::base_power(1), Term::number(1)),
                                  Term::number(n - 10));
    if (n <= 99) {
        int d = n / 10, r = n % 10;
        Term decade = Term::mul(Term::base_power(1), Term::number(d));
        if (r == 0) return decade;
        return Term::add(std::move(decade), Term::number(r));
    }
    // Higher ranges follow the plain decimal expansion, highest digit first.
    for (int k = 3; k >= 2; --k) {
        long long unit = 1;
        for (int i = 0; i < k; ++i) unit *= 10;
        if (n < unit) continue;
        int d = static_cast<int>(n / unit);
        int rest = static_cast<int>(n % unit);
        Term head = Term::mul(Term::base_power(k), Term::number(d));
        if (rest == 0) return head;
        return Term::add(std::move(head), term_for(rest));
    }
    throw std::logic_error("term_for: unreachable");
}

Ump ump_for(int n, Orthography orthography) {
    if (n < 1 || n > 99) throw std::out_of_range("ump_for: n must be in 1..99");
    const auto& decades =
        orthography == Orthography::Paper ? kDecadesPaper : kDecadesStandard;
    std::string exponent;
    if (n <= 9)
        exponent = kUnits[static_cast<std::size_t>(n)];
    else if (n <= 19)
        exponent = kTeens[static_cast<std::size_t>(n - 10)];
    else {
        exponent = decades[static_cast<std::size_t>(n / 10)];
        if (n % 10 != 0) exponent += kUnits[static_cast<std::size_t>(n % 10)];
    }
    return Ump{std::move(exponent), term_for(n)};
}

std::vector<Feedback> judge(const Ump& expected, const std::vector<std::string>& produced) {
    if (produced.empty()) return {Feedback{Feedback::Verdict::Punish, ""}};
    std::vector<Feedback> out;
    out.reserve(produced.size());
    for (const auto& candidate : produced) {
        if (candidate == expected.exponent)
            out.push_back(Feedback{Feedback::Verdict::Reward, ""});
        else
            out.push_back(Feedback{Feedback::Verdict::Punish, candidate});
    }
    return out;
}

}  // namespace numgram
