#pragma once
// Minimal subprocess helper: run a command, capture stdout.

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "acir/errors.hpp"

namespace acir {

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

// Runs argv directly (no shell), capturing stdout. stderr goes to /dev/null.
inline CommandResult run_command(const std::vector<std::string>& argv) {
    int pipefd[2];
    if (pipe(pipefd) != 0)
        throw IoError("pipe() failed");

    pid_t pid = fork();
    if (pid < 0)
        throw IoError("fork() failed");

    if (pid == 0) {
        dup2(pipefd[1], STDOUT_FILENO);
        close(pipefd[0]);
        close(pipefd[1]);
        if (FILE* devnull = std::fopen("/dev/null", "w"))
            dup2(fileno(devnull), STDERR_FILENO);
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& a : argv)
            cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        execvp(cargv[0], cargv.data());
        _exit(127);
    }

    close(pipefd[1]);
    CommandResult result;
    std::array<char, 8192> buf{};
    ssize_t n;
    while ((n = read(pipefd[0], buf.data(), buf.size())) > 0)
        result.output.append(buf.data(), static_cast<size_t>(n));
    close(pipefd[0]);

    int status = 0;
    waitpid(pid, &status, 0);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace acir
