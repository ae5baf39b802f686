#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "latticeopt/evaluator.hpp"

namespace latticeopt {

namespace {

using Clock = std::chrono::steady_clock;

void ignore_sigpipe_once() {
  // A dead child must surface as EPIPE on write, not kill the process.
  static std::once_flag flag;
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

struct Pipe {
  int rd = -1;
  int wr = -1;

  Pipe() {
    int fds[2];
    if (::pipe(fds) != 0) throw SpawnFailed("pipe() failed");
    rd = fds[0];
    wr = fds[1];
  }
  ~Pipe() {
    close_rd();
    close_wr();
  }
  void close_rd() {
    if (rd >= 0) ::close(rd);
    rd = -1;
  }
  void close_wr() {
    if (wr >= 0) ::close(wr);
    wr = -1;
  }
};

int remaining_ms(Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return static_cast<int>(std::max<long long>(0, left.count()));
}

void kill_and_reap(pid_t pid) {
  ::kill(pid, SIGKILL);
  int status = 0;
  ::waitpid(pid, &status, 0);
}

}  // namespace

ExternalEvaluator::ExternalEvaluator(std::vector<std::string> argv, double timeout_s)
    : argv_(std::move(argv)), timeout_s_(timeout_s) {
  if (argv_.empty()) throw ConfigError("external evaluator: empty command");
}

PhysicsResult ExternalEvaluator::evaluate(const SolutionVector& sol) {
  ignore_sigpipe_once();

  nlohmann::json request;
  request["enr"] = sol.enr;
  request["gad"] = sol.gad;
  const std::string request_line = request.dump() + "\n";

  Pipe to_child;
  Pipe from_child;
  Pipe exec_err;  // child reports exec failure through a CLOEXEC pipe
  ::fcntl(exec_err.wr, F_SETFD, FD_CLOEXEC);

  const pid_t pid = ::fork();
  if (pid < 0) throw SpawnFailed("fork() failed: " + std::string(std::strerror(errno)));

  if (pid == 0) {
    ::dup2(to_child.rd, STDIN_FILENO);
    ::dup2(from_child.wr, STDOUT_FILENO);
    ::close(to_child.rd);
    ::close(to_child.wr);
    ::close(from_child.rd);
    ::close(from_child.wr);
    ::close(exec_err.rd);

    std::vector<char*> argv;
    argv.reserve(argv_.size() + 1);
    for (auto& arg : argv_) argv.push_back(arg.data());
    argv.push_back(nullptr);
    ::execvp(argv[0], argv.data());

    const int err = errno;
    [[maybe_unused]] auto n = ::write(exec_err.wr, &err, sizeof(err));
    ::_exit(127);
  }

  to_child.close_rd();
  from_child.close_wr();
  exec_err.close_wr();

  const auto deadline =
      Clock::now() + std::chrono::milliseconds(static_cast<long long>(timeout_s_ * 1000.0));

  // The request is far below PIPE_BUF, so a single write cannot block.
  if (::write(to_child.wr, request_line.data(), request_line.size()) < 0) {
    kill_and_reap(pid);
    throw SpawnFailed("external evaluator: writing request failed: " +
                      std::string(std::strerror(errno)));
  }
  to_child.close_wr();

  std::string output;
  char buf[4096];
  while (true) {
    pollfd pfd{from_child.rd, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, remaining_ms(deadline));
    if (rc == 0) {
      kill_and_reap(pid);
      throw Timeout("external evaluator timed out after " + std::to_string(timeout_s_) + "s");
    }
    if (rc < 0) {
      if (errno == EINTR) continue;
      kill_and_reap(pid);
      throw SpawnFailed("poll() failed: " + std::string(std::strerror(errno)));
    }
    const ssize_t n = ::read(from_child.rd, buf, sizeof(buf));
    if (n < 0) {
      if (errno == EINTR) continue;
      kill_and_reap(pid);
      throw SpawnFailed("read() failed: " + std::string(std::strerror(errno)));
    }
    if (n == 0) break;  // EOF
    output.append(buf, static_cast<std::size_t>(n));
  }

  // Child closed stdout; give it until the deadline to exit.
  int status = 0;
  while (true) {
    const pid_t w = ::waitpid(pid, &status, WNOHANG);
    if (w == pid) break;
    if (w < 0) throw SpawnFailed("waitpid() failed");
    if (Clock::now() >= deadline) {
      kill_and_reap(pid);
      throw Timeout("external evaluator did not exit within " + std::to_string(timeout_s_) +
                    "s");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }

  int exec_errno = 0;
  if (::read(exec_err.rd, &exec_errno, sizeof(exec_errno)) == sizeof(exec_errno))
    throw SpawnFailed("cannot execute '" + argv_[0] +
                      "': " + std::string(std::strerror(exec_errno)));

  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const int code = WIFEXITED(status) ? WEXITSTATUS(status)
                                       : (WIFSIGNALED(status) ? 128 + WTERMSIG(status) : -1);
    throw EvaluatorReportedError(
        "external evaluator exited with status " + std::to_string(code), code);
  }

  const auto payload = nlohmann::json::parse(output, nullptr, false);
  if (payload.is_discarded() || !payload.is_object() || !payload.contains("kinf") ||
      !payload.contains("ppf") || !payload["kinf"].is_number() || !payload["ppf"].is_number())
    throw ProtocolError("external evaluator: expected one JSON line "
                        "{\"kinf\":x,\"ppf\":y}, got: " +
                        output.substr(0, 200));

  PhysicsResult r;
  r.kinf = payload["kinf"].get<double>();
  r.ppf = payload["ppf"].get<double>();
  return r;
}

}  // namespace latticeopt
