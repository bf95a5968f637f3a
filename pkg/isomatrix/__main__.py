import logging

import docopt  # type: ignore

import isomatrix.appmain as appmain
import isomatrix.config as appcfg
import isomatrix.doc as appdoc
from isomatrix import ISOMATRIX_VERSION

if __name__ == "__main__":
    opt = docopt.docopt(appdoc.__doc__, version=ISOMATRIX_VERSION, options_first=True)

    conf = appcfg.IsomatrixConfig(opt)
    logging.basicConfig(
        level=logging.DEBUG if conf.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    app = appmain.Isomatrix(conf)
    app.run()
