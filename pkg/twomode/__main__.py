from twomode.cli import main

raise SystemExit(main())
