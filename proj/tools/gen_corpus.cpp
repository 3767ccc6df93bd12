// Regenerates the corpus fixture files from the builders.
#include <iostream>

#include "mbt/corpus.hpp"

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : mbt::corpus_dir();
    try {
        mbt::write_corpus(dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cout << "wrote " << dir << "\n";
    return 0;
}
