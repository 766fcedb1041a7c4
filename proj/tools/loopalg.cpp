#include "loopalg/cli/app.hpp"

#include <exception>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return loopalg::cli::run(args, std::cout, std::cerr);
    } catch (const loopalg::PipelineError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return loopalg::cli::exit_verify_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return loopalg::cli::exit_verify_failed;
    }
}
