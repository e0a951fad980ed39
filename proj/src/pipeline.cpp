namespace communext {}
