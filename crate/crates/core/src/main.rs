fn main() {
    // Die silently on closed pipes (`gmec ... | head`) like other Unix
    // tools, instead of panicking on EPIPE.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(gmec::cli::run());
}
