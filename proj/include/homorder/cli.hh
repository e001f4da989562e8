#ifndef HOMORDER_CLI_HH
#define HOMORDER_CLI_HH 1

#include <homorder/serialize.hh>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace homorder::cli
{
    inline constexpr int exit_true = 0;
    inline constexpr int exit_false = 1;
    inline constexpr int exit_error = 2;

    /// Runs one command line, without the program name. Returns the exit code:
    /// 0 true/verified, 1 false/none, 2 error/truncated.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

    /// A file path when one exists, otherwise a literal direction string.
    auto load_structure(const std::string & source) -> OrientedTree;
    auto load_path(const std::string & source) -> OrientedPath;

    struct BatchResult
    {
        Json report;
        int exit_code = exit_true;
    };

    /// Runs every check in a manifest, results sorted by name. File names in
    /// the manifest are relative to its directory.
    auto batch_verify(const std::filesystem::path & manifest) -> BatchResult;
}

#endif
