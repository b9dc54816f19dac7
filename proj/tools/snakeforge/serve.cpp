// Copyright 2026 The Snakeforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "serve.hpp"

#include <boost/asio/dispatch.hpp>
#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <chrono>
#include <deque>
#include <iostream>
#include <memory>
#include <string>

#include "api.hpp"

namespace sfcli
{

namespace
{

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

// Slow readers get disconnected rather than buffering without bound.
constexpr std::size_t kMaxOutbox = 4096;

class Server;

class Connection : public std::enable_shared_from_this<Connection>
{
public:
  Connection(tcp::socket socket, Server & server, long id);
  ~Connection();

  void start();

private:
  void on_accept(beast::error_code ec);
  void read();
  void on_read(beast::error_code ec, std::size_t bytes);
  void schedule_tick();
  void on_tick(beast::error_code ec);
  void send(std::string text);
  void write_next();
  void on_write(beast::error_code ec, std::size_t bytes);
  void shut_down();

  websocket::stream<beast::tcp_stream> ws_;
  net::steady_timer timer_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  Server & server_;
  long id_;
  sf_session * session_ = nullptr;
  std::chrono::steady_clock::time_point next_tick_;
  std::chrono::nanoseconds period_;
  long ticks_ = 0;
  bool writing_ = false;
  bool closing_ = false;
  bool closed_ = false;
};

class Server
{
public:
  Server(net::io_context & ioc, const sf_assembly * assembly, const ServeOptions & options)
  : ioc_(ioc), acceptor_(ioc), assembly_(assembly), options_(options)
  {
    const tcp::endpoint endpoint(net::ip::make_address(options.host), options.port);
    acceptor_.open(endpoint.protocol());
    acceptor_.set_option(net::socket_base::reuse_address(true));
    acceptor_.bind(endpoint);
    acceptor_.listen(net::socket_base::max_listen_connections);
  }

  unsigned short port() const {return acceptor_.local_endpoint().port();}
  const sf_assembly * assembly() const {return assembly_;}
  const ServeOptions & options() const {return options_;}

  std::string record_path(long id) const
  {
    if (options_.record_path.empty()) {
      return {};
    }
    return id == 1 ? options_.record_path : options_.record_path + "." + std::to_string(id);
  }

  void accept()
  {
    acceptor_.async_accept(
      net::make_strand(ioc_), [this](beast::error_code ec, tcp::socket socket) {
        if (ec) {
          return;
        }
        std::make_shared<Connection>(std::move(socket), *this, ++sessions_)->start();
        if (!options_.once) {
          accept();
        } else {
          acceptor_.close();
        }
      });
  }

  void session_ended()
  {
    if (options_.once) {
      ioc_.stop();
    }
  }

private:
  net::io_context & ioc_;
  tcp::acceptor acceptor_;
  const sf_assembly * assembly_;
  ServeOptions options_;
  long sessions_ = 0;
};

Connection::Connection(tcp::socket socket, Server & server, long id)
: ws_(std::move(socket)), timer_(ws_.get_executor()), server_(server), id_(id),
  period_(std::chrono::nanoseconds(static_cast<long long>(1e9 / server.options().tick_rate_hz)))
{
}

Connection::~Connection()
{
  sf_session_free(session_);
  std::cerr << "session " << id_ << " closed after " << ticks_ << " ticks\n";
  server_.session_ended();
}

void Connection::start()
{
  net::dispatch(ws_.get_executor(), [self = shared_from_this()] {
      self->ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
      self->ws_.async_accept(beast::bind_front_handler(&Connection::on_accept, self));
    });
}

void Connection::on_accept(beast::error_code ec)
{
  if (ec) {
    return;
  }
  const auto & opts = server_.options();
  if (sf_session_create(server_.assembly(), opts.tick_rate_hz, nullptr, &session_) != SF_OK) {
    std::cerr << "session " << id_ << ": " << sf_last_error() << '\n';
    return;
  }
  const std::string log = server_.record_path(id_);
  if (!log.empty() && sf_session_record(session_, log.c_str()) != SF_OK) {
    std::cerr << "session " << id_ << ": " << sf_last_error() << '\n';
    return;
  }
  std::cerr << "session " << id_ << " opened" << (log.empty() ? "" : ", recording to " + log) << '\n';
  send(Json{{"type", "hello"}, {"version", sf_protocol_version()}}.dump());
  read();
  next_tick_ = std::chrono::steady_clock::now() + period_;
  schedule_tick();
}

void Connection::read()
{
  ws_.async_read(buffer_, beast::bind_front_handler(&Connection::on_read, shared_from_this()));
}

void Connection::on_read(beast::error_code ec, std::size_t)
{
  if (ec) {
    shut_down();
    return;
  }
  const std::string text = beast::buffers_to_string(buffer_.data());
  buffer_.consume(buffer_.size());
  if (!closing_) {
    // Queued in the session; applied at the next tick boundary.
    const sf_status status = sf_session_submit(session_, text.c_str());
    if (status != SF_OK) {
      send(Json{{"type", "error"}, {"code", sf_status_name(status)}, {"message", sf_last_error()}}.dump());
    }
  }
  read();
}

void Connection::schedule_tick()
{
  timer_.expires_at(next_tick_);
  timer_.async_wait(beast::bind_front_handler(&Connection::on_tick, shared_from_this()));
}

void Connection::on_tick(beast::error_code ec)
{
  if (ec || closed_ || closing_) {
    return;
  }
  char * record = nullptr;
  if (sf_session_tick(session_, &record) != SF_OK) {
    send(Json{{"type", "error"}, {"code", "internal"}, {"message", sf_last_error()}}.dump());
    closing_ = true;
    return;
  }
  send(take(record));
  ++ticks_;
  const long limit = server_.options().max_ticks;
  if (limit > 0 && ticks_ >= limit) {
    closing_ = true;
    if (!writing_) {
      write_next();
    }
    return;
  }
  next_tick_ += period_;
  schedule_tick();
}

void Connection::send(std::string text)
{
  if (closed_) {
    return;
  }
  if (outbox_.size() >= kMaxOutbox) {
    std::cerr << "session " << id_ << ": client too slow, disconnecting\n";
    shut_down();
    return;
  }
  outbox_.push_back(std::move(text));
  if (!writing_) {
    write_next();
  }
}

void Connection::write_next()
{
  if (closed_) {
    return;
  }
  if (outbox_.empty()) {
    writing_ = false;
    if (closing_) {
      writing_ = true;
      ws_.async_close(
        websocket::close_code::normal, [self = shared_from_this()](beast::error_code) {self->shut_down();});
    }
    return;
  }
  writing_ = true;
  ws_.text(true);
  ws_.async_write(net::buffer(outbox_.front()), beast::bind_front_handler(&Connection::on_write, shared_from_this()));
}

void Connection::on_write(beast::error_code ec, std::size_t)
{
  if (ec) {
    shut_down();
    return;
  }
  outbox_.pop_front();
  write_next();
}

void Connection::shut_down()
{
  if (closed_) {
    return;
  }
  closed_ = true;
  timer_.cancel();
  beast::error_code ignored;
  beast::get_lowest_layer(ws_).socket().close(ignored);
}

}  // namespace

int serve(const sf_assembly * assembly, const ServeOptions & options)
{
  net::io_context ioc(1);
  Server server(ioc, assembly, options);
  net::signal_set signals(ioc, SIGINT, SIGTERM);
  signals.async_wait([&](beast::error_code, int) {ioc.stop();});
  server.accept();
  std::cout << "listening on ws://" << options.host << ':' << server.port() << std::endl;
  ioc.run();
  return 0;
}

}  // namespace sfcli
