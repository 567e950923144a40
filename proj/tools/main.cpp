#include "rfblt_app/commands.hpp"

int main(int argc, char** argv) { return rfblt::app::run_cli(argc, argv); }
