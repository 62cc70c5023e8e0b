#include "process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <sstream>
#include <stdexcept>

extern char** environ;

namespace qke::testing {

namespace {

int spawn(const std::vector<std::string>& args, int& out_fd, int& err_fd) {
  int out_pipe[2];
  int err_pipe[2];
  if (pipe2(out_pipe, O_CLOEXEC) != 0 || pipe2(err_pipe, O_CLOEXEC) != 0) {
    throw std::runtime_error("pipe failed");
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], 1);
  posix_spawn_file_actions_adddup2(&actions, err_pipe[1], 2);

  std::vector<char*> argv;
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  pid_t pid = -1;
  const int rc = posix_spawn(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  close(out_pipe[1]);
  close(err_pipe[1]);
  if (rc != 0) {
    close(out_pipe[0]);
    close(err_pipe[0]);
    throw std::runtime_error("posix_spawn failed for " + args[0]);
  }
  out_fd = out_pipe[0];
  err_fd = err_pipe[0];
  return pid;
}

void drain(int out_fd, int err_fd, std::string& out, std::string& err) {
  pollfd fds[2] = {{out_fd, POLLIN, 0}, {err_fd, POLLIN, 0}};
  int open_count = 2;
  char buf[4096];
  while (open_count > 0) {
    if (poll(fds, 2, -1) < 0) continue;
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      const ssize_t n = read(fds[i].fd, buf, sizeof(buf));
      if (n <= 0) {
        close(fds[i].fd);
        fds[i].fd = -1;
        --open_count;
      } else {
        (i == 0 ? out : err).append(buf, static_cast<std::size_t>(n));
      }
    }
  }
}

int reap(int pid) {
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
  }
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128 + WTERMSIG(status);
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& args) {
  int out_fd = -1;
  int err_fd = -1;
  const int pid = spawn(args, out_fd, err_fd);
  ProcessResult result;
  drain(out_fd, err_fd, result.out, result.err);
  result.exit_code = reap(pid);
  return result;
}

BackgroundProcess::BackgroundProcess(const std::vector<std::string>& args) {
  pid_ = spawn(args, out_fd_, err_fd_);
}

BackgroundProcess::~BackgroundProcess() {
  if (!waited_) {
    kill(pid_, SIGKILL);
    wait();
  }
}

std::string BackgroundProcess::read_line() {
  std::string line;
  char c = 0;
  while (read(out_fd_, &c, 1) == 1) {
    consumed_.push_back(c);
    if (c == '\n') return line;
    line.push_back(c);
  }
  return line;
}

ProcessResult BackgroundProcess::wait() {
  ProcessResult result;
  result.out = consumed_;
  drain(out_fd_, err_fd_, result.out, result.err);
  result.exit_code = reap(pid_);
  waited_ = true;
  return result;
}

std::string field(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  const std::string prefix = name + "=";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) {
      const auto hash = line.find("    #");
      return line.substr(prefix.size(), hash == std::string::npos ? std::string::npos
                                                                  : hash - prefix.size());
    }
  }
  return {};
}

}  // namespace qke::testing
