// Compares the serial and OpenMP chart closures on synthetic lexicons of
// growing size and checks that both produce identical derivation sets.

#include <chrono>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "numgram/transducer.hpp"

using namespace numgram;

namespace {

Lexicon random_lexicon(std::mt19937& rng, int entries) {
    Lexicon lex;
    std::uniform_int_distribution<int> sel_count(0, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> letter('a', 'f');
    std::uniform_int_distribution<int> len(1, 3);
    std::uniform_int_distribution<long long> lit(0, 9);

    for (int i = 0; i < entries; ++i) {
        Sign s;
        int l = len(rng);
        for (int c = 0; c < l; ++c) s.exponent += static_cast<char>(letter(rng));
        s.type.category = Category::Lexical;
        int sels = sel_count(rng);
        for (int c = 0; c < sels; ++c)
            s.type.features.push_back(Feature{FeatureKind::Selector, "num"});
        if (coin(rng)) s.type.features.push_back(Feature{FeatureKind::Licensor, "k"});
        s.type.features.push_back(Feature{FeatureKind::Base, "num"});
        if (coin(rng)) s.type.features.push_back(Feature{FeatureKind::Licensee, "k"});
        s.semantics = Term::number(lit(rng));
        lex.add(s);
    }
    return lex;
}

double run(const Lexicon& lex, const TransducerOptions& options, std::size_t& results) {
    auto begin = std::chrono::steady_clock::now();
    auto derivations = enumerate_derivations(lex, Feature{FeatureKind::Base, "num"}, options);
    auto end = std::chrono::steady_clock::now();
    results = derivations.size();
    return std::chrono::duration<double, std::milli>(end - begin).count();
}

}  // namespace

int main(int argc, char** argv) {
    int repeats = argc > 1 ? std::stoi(argv[1]) : 3;
    std::mt19937 rng(2024);

    std::cout << "entries  leaves  serial_ms  parallel_ms  speedup  derivations\n";
    for (int entries : {8, 16, 32, 64}) {
        Lexicon lex = random_lexicon(rng, entries);
        TransducerOptions serial;
        serial.parallel = false;
        serial.max_leaves = entries >= 32 ? 4 : 5;
        serial.chart_cap = 2000000;
        TransducerOptions parallel = serial;
        parallel.parallel = true;

        double serial_ms = 0, parallel_ms = 0;
        std::size_t serial_n = 0, parallel_n = 0;
        for (int r = 0; r < repeats; ++r) {
            serial_ms += run(lex, serial, serial_n);
            parallel_ms += run(lex, parallel, parallel_n);
        }
        serial_ms /= repeats;
        parallel_ms /= repeats;
        if (serial_n != parallel_n) {
            std::cerr << "mismatch: serial " << serial_n << " vs parallel " << parallel_n
                      << '\n';
            return 1;
        }
        std::printf("%7d  %6d  %9.2f  %11.2f  %7.2f  %11zu\n", entries, serial.max_leaves,
                    serial_ms, parallel_ms, serial_ms / parallel_ms, serial_n);
    }
    return 0;
}
