// Catch2 amalgamated implementation plus its default main.
#include <catch2/catch_amalgamated.cpp>
