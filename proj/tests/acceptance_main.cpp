#include "levyflux/selftest.hpp"

#include <iostream>

int main() {
    const int failures = levyflux::run_acceptance(std::cout);
    return failures == 0 ? 0 : 1;
}
