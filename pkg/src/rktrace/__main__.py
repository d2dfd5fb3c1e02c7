from rktrace.cli import main

raise SystemExit(main())
